#pragma once

#include <cstddef>
#include <span>

#include "qorder/classical_set.hpp"
#include "qorder/toy.hpp"

// Reference computations that share no code path with the library solvers.
namespace qorder::verify {

/// Distance from y to the centered disk by dense sampling of the boundary circle.
/// Zero inside the disk.
double sampled_disk_distance(toy::Vec2 y, double radius, const toy::ToyNorm& norm,
                             std::size_t samples = 1'000'000);

struct GridOracleResult {
    bool inside = false;
    double best_residual = 0.0; ///< min over grid weights of ||rho - sum w_i gamma_i||_F / tr(rho)
    std::size_t points = 0;
};

/// Brute-force hull membership: every weight vector on the simplex with
/// entries in multiples of `step`.
GridOracleResult grid_membership(const DensityMatrix& rho, const ClassicalSetModel& set, double step = 0.01,
                                 double tol = 1e-6);

/// Coefficients of A psi in the generator basis for psi = sum_j x_j c_j,
/// where A c_j = a_j c_{f(j)}.
ComplexVector function_image_coefficients(std::span<const Complex> x, std::span<const Complex> a,
                                          std::span<const std::size_t> f);

} // namespace qorder::verify
