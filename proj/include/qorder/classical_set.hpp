#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qorder/matrix.hpp"
#include "qorder/states.hpp"

namespace qorder {

enum class SetKind { CoherentGrid, ProductGrid, Custom };

std::string_view to_string(SetKind kind) noexcept;
SetKind set_kind_from_string(std::string_view name);

/// Construction parameters recorded alongside a generated set.
struct GridParameters {
    std::size_t n_max = 0;
    std::vector<Complex> alphas;
    std::optional<BipartiteShape> shape;
    std::size_t count = 0;
    std::uint64_t seed = 0;
};

/// Finite model of a convex classical set: the convex hull of the projectors
/// onto a family of normalized pure generator states. All verdicts computed
/// against a model are relative to that model, not to the ideal set it
/// discretizes.
class ClassicalSetModel {
  public:
    /// Normalizes the generators and drops duplicates (equal up to a global phase).
    ClassicalSetModel(std::vector<PureState> generators, SetKind kind, GridParameters params = {});

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return generators_.size(); }
    SetKind kind() const noexcept { return kind_; }
    const GridParameters& parameters() const noexcept { return params_; }
    const std::vector<PureState>& generators() const noexcept { return generators_; }

    /// |c_i><c_i| for generator i.
    const ComplexMatrix& projector(std::size_t i) const { return projectors_.at(i); }

    /// Realified generator projectors as columns (dim^2 rows).
    const RealMatrix& realified() const noexcept { return realified_; }

    /// sum_i w_i |c_i><c_i|.
    DensityMatrix hull_point(std::span<const double> weights) const;

    /// Generator vectors as the columns of a dim x size matrix.
    ComplexMatrix generator_matrix() const;

  private:
    std::size_t dim_ = 0;
    std::vector<PureState> generators_;
    std::vector<ComplexMatrix> projectors_;
    RealMatrix realified_;
    SetKind kind_;
    GridParameters params_;
};

inline constexpr double kDefaultMembershipTolerance = 1e-7;
inline constexpr double kDefaultTraceWeight = 1.0;

struct ConeFit {
    RealVector weights;
    double residual = 0.0; ///< ||target - sum_i w_i gamma_i||_F
};

/// Nonnegative fit of a Hermitian target by generator projectors, with the
/// trace match appended as an extra equation scaled by `trace_weight`.
ConeFit fit_cone(const ComplexMatrix& target, const ClassicalSetModel& set, double trace_weight = kDefaultTraceWeight);

struct MembershipOptions {
    double tol = kDefaultMembershipTolerance; ///< relative to tr(rho)
    double trace_weight = kDefaultTraceWeight;
};

struct MembershipResult {
    bool inside = false;
    RealVector weights;    ///< one per generator; sums to tr(rho) when inside
    double residual = 0.0; ///< Frobenius units
};

MembershipResult membership(const DensityMatrix& rho, const ClassicalSetModel& set, const MembershipOptions& opts = {});

/// Fock-truncated coherent state, amplitudes alpha^n / sqrt(n!) for n <= n_max,
/// renormalized after truncation.
ComplexVector coherent_state(std::size_t n_max, Complex alpha);

/// Truncated coherent states for each alpha. Requires |alpha|^2 <= n_max / 4.
ClassicalSetModel coherent_grid(std::size_t n_max, const std::vector<Complex>& alphas);

/// `count` tensor products of Haar-random local pure states; deterministic for a seed.
/// Requires count >= (dim_a * dim_b)^2.
ClassicalSetModel product_grid(BipartiteShape shape, std::size_t count, std::uint64_t seed);

ClassicalSetModel custom_set(std::vector<PureState> generators);

} // namespace qorder
