#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "qorder/matrix.hpp"

/// Small dense linear algebra used by every other module.
///
/// The eigen and singular value solvers are cyclic Jacobi iterations. They are
/// robust for the small matrices this library handles (dimension up to 64) and
/// make no attempt at large-scale performance.
namespace qorder::linalg {

/// Exponent marker for the max norm.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative tolerance used wherever a caller does not supply one.
inline constexpr double kDefaultTolerance = 1e-9;

struct Spectrum {
    RealVector values;     ///< descending
    ComplexMatrix vectors; ///< orthonormal eigenvectors as columns
};

struct SvdResult {
    ComplexMatrix u;
    RealVector singular_values; ///< descending, min(rows, cols) entries
    ComplexMatrix v;
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// Throws NotHermitian when ||M - M^dagger|| exceeds `hermitian_tol`.
Spectrum hermitian_eig(const ComplexMatrix& m, double hermitian_tol = 1e-10);

/// Thin SVD via one-sided Jacobi rotations.
SvdResult svd(const ComplexMatrix& m);

/// (sum |x_i|^p)^(1/p), or max |x_i| for p = kInfinity. Throws BadExponent for p < 1.
double vec_p_norm(std::span<const double> x, double p);
double vec_p_norm(std::span<const Complex> x, double p);

/// vec_p_norm(T x, p). T must be square and numerically invertible
/// (condition number below `max_condition`), otherwise SingularMap.
double transformed_norm(std::span<const Complex> x, const ComplexMatrix& t, double p, double max_condition = 1e12);

/// p-norm of the singular values.
double schatten_norm(const ComplexMatrix& m, double p);

/// Number of entries strictly greater than tol * max(1, values[0]).
std::size_t eps_rank(std::span<const double> values, double tol = kDefaultTolerance);

template<typename T>
struct LeastSquaresResult {
    std::vector<T> x;
    double residual = 0.0;
    bool rank_deficient = false;
};

/// min ||A x - b||_2 by Householder QR. Columns that are numerically dependent
/// on earlier ones get a zero coefficient and set `rank_deficient`.
LeastSquaresResult<double> least_squares(const RealMatrix& a, std::span<const double> b);
LeastSquaresResult<Complex> least_squares(const ComplexMatrix& a, std::span<const Complex> b);

struct NnlsResult {
    RealVector weights;
    double residual = 0.0;
    std::size_t iterations = 0;
};

/// Lawson-Hanson active-set solution of min ||A w - b||_2 subject to w >= 0.
///
/// `tol` is the relative dual-feasibility threshold: the solver stops once no
/// inactive column has gradient above tol * max_j ||a_j|| * ||b||_2. Throws
/// NoConvergence after 100 * cols inner iterations.
NnlsResult nnls_feasible(const RealMatrix& a, std::span<const double> b, double tol = 1e-12);

/// Coordinates of a Hermitian matrix in the orthonormal basis
/// {E_ii} u {(E_ij + E_ji)/sqrt2} u {i(E_ij - E_ji)/sqrt2}, i < j.
/// The map is Frobenius-isometric: ||realify(H)||_2 = ||H||_F.
RealVector realify(const ComplexMatrix& hermitian);

/// M^dagger M for tall M, as used for Gram matrices of column families.
ComplexMatrix gram(const ComplexMatrix& columns);

/// Inverse of a Hermitian positive-definite matrix via its spectrum.
/// Throws SingularMap when the smallest eigenvalue is below tol * largest.
ComplexMatrix hermitian_inverse(const ComplexMatrix& m, double tol = 1e-12);

/// Gram-Schmidt with reorthogonalization, column by column. Columns that are
/// dependent on earlier ones are replaced by standard basis completions.
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

} // namespace qorder::linalg
