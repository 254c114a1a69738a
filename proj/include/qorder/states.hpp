#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qorder/matrix.hpp"

namespace qorder {

/// Factorization dim = dim_a * dim_b of a two-party Hilbert space.
struct BipartiteShape {
    std::size_t dim_a = 1;
    std::size_t dim_b = 1;

    BipartiteShape() = default;
    BipartiteShape(std::size_t a, std::size_t b);

    std::size_t dim() const noexcept { return dim_a * dim_b; }
    friend bool operator==(const BipartiteShape&, const BipartiteShape&) = default;
};

/// State vector; normalization is not required (cone elements are allowed).
class PureState {
  public:
    explicit PureState(ComplexVector amplitudes, std::optional<BipartiteShape> shape = std::nullopt);

    /// |k> in C^dim.
    static PureState basis(std::size_t dim, std::size_t k);

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
    const std::optional<BipartiteShape>& bipartite() const noexcept { return shape_; }
    double norm() const { return norm2(amplitudes_); }
    PureState normalized() const;

  private:
    ComplexVector amplitudes_;
    std::optional<BipartiteShape> shape_;
};

/// Result of checking the density-matrix invariants. Never throws.
struct StateDiagnostics {
    double hermiticity_defect = 0.0;
    double min_eigenvalue = 0.0;
    double trace = 0.0;
    bool hermitian = false;
    bool positive = false;
    bool positive_trace = false;

    bool passed() const noexcept { return hermitian && positive && positive_trace; }
    std::string summary() const;
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-9;

StateDiagnostics validate(const ComplexMatrix& m);

/// Hermitian positive-semidefinite matrix with positive trace; trace need not be 1.
class DensityMatrix {
  public:
    /// Throws InvalidState unless validate(m) passes.
    explicit DensityMatrix(ComplexMatrix m, std::optional<BipartiteShape> shape = std::nullopt);

    /// For results of operations that preserve the invariants by construction
    /// (nonnegative mixtures, Kraus maps). The trace may be zero here.
    static DensityMatrix unchecked(ComplexMatrix m, std::optional<BipartiteShape> shape = std::nullopt);

    std::size_t dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    double trace() const { return m_.trace().real(); }
    const std::optional<BipartiteShape>& bipartite() const noexcept { return shape_; }

  private:
    DensityMatrix() = default;
    ComplexMatrix m_;
    std::optional<BipartiteShape> shape_;
};

StateDiagnostics validate(const DensityMatrix& rho);

/// rho / tr(rho). Throws ZeroTrace for trace <= 0.
DensityMatrix normalize(const DensityMatrix& rho);

bool is_normalized(const DensityMatrix& rho, double tol = 1e-9);

/// sum_i w_i rho_i for nonnegative weights with at least one positive.
DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights);

/// |psi><psi|, trace ||psi||^2.
DensityMatrix from_pure(const PureState& psi);

/// Maximally mixed state identity/dim.
DensityMatrix maximally_mixed(std::size_t dim);

} // namespace qorder
