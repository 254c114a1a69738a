#include "qorder/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qorder::linalg {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

// 2x2 unitary [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns (p, q).
struct PlaneRotation {
    Complex g00, g01, g10, g11;

    static PlaneRotation make(double t, Complex phase_conj) {
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        return {c, s, -s * phase_conj, c * phase_conj};
    }

    void apply_right(ComplexMatrix& m, std::size_t p, std::size_t q) const {
        for (std::size_t k = 0; k < m.rows(); ++k) {
            const Complex mp = m(k, p);
            const Complex mq = m(k, q);
            m(k, p) = mp * g00 + mq * g10;
            m(k, q) = mp * g01 + mq * g11;
        }
    }

    void apply_left_adjoint(ComplexMatrix& m, std::size_t p, std::size_t q) const {
        for (std::size_t k = 0; k < m.cols(); ++k) {
            const Complex mp = m(p, k);
            const Complex mq = m(q, k);
            m(p, k) = std::conj(g00) * mp + std::conj(g10) * mq;
            m(q, k) = std::conj(g01) * mp + std::conj(g11) * mq;
        }
    }
};

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

std::vector<std::size_t> descending_order(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return order;
}

ComplexMatrix permute_columns(const ComplexMatrix& m, std::span<const std::size_t> order) {
    ComplexMatrix out(m.rows(), order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            out(i, j) = m(i, order[j]);
        }
    }
    return out;
}

double column_norm_sq(const ComplexMatrix& m, std::size_t j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += std::norm(m(i, j));
    }
    return s;
}

Complex column_inner(const ComplexMatrix& m, std::size_t p, std::size_t q) {
    Complex s{};
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += std::conj(m(i, p)) * m(i, q);
    }
    return s;
}

template<typename T>
T unit_phase(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return v < 0.0 ? -1.0 : 1.0;
    } else {
        const double r = std::abs(v);
        return r == 0.0 ? T{1.0} : v / r;
    }
}

template<typename T>
LeastSquaresResult<T> householder_least_squares(const DenseMatrix<T>& a, std::span<const T> b) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m) {
        throw Error(ErrorCode::ShapeMismatch, "least_squares: rhs length differs from row count");
    }
    DenseMatrix<T> r = a;
    std::vector<T> y(b.begin(), b.end());
    LeastSquaresResult<T> result;
    result.x.assign(n, T{});

    double max_col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s += std::norm(a(i, j));
        }
        max_col = std::max(max_col, std::sqrt(s));
    }
    const double dependence_tol = 1e-12 * std::max(max_col, 1e-300);

    // Columns kept in the triangular factor, in order.
    std::vector<std::size_t> kept;
    std::vector<T> v(m);
    std::size_t row = 0;
    for (std::size_t j = 0; j < n && row < m; ++j) {
        double tail = 0.0;
        for (std::size_t i = row; i < m; ++i) {
            tail += std::norm(r(i, j));
        }
        tail = std::sqrt(tail);
        if (tail <= dependence_tol) {
            result.rank_deficient = true;
            continue;
        }
        const T alpha = -unit_phase(r(row, j)) * tail;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = i < row ? T{} : r(i, j);
        }
        v[row] -= alpha;
        double vnorm_sq = 0.0;
        for (std::size_t i = row; i < m; ++i) {
            vnorm_sq += std::norm(v[i]);
        }
        if (vnorm_sq > 0.0) {
            const auto reflect = [&](auto&& get) {
                T dot{};
                for (std::size_t i = row; i < m; ++i) {
                    dot += detail::conj_if_complex(v[i]) * get(i);
                }
                const T scale = dot * (2.0 / vnorm_sq);
                for (std::size_t i = row; i < m; ++i) {
                    get(i) -= v[i] * scale;
                }
            };
            for (std::size_t k = j; k < n; ++k) {
                reflect([&](std::size_t i) -> T& { return r(i, k); });
            }
            reflect([&](std::size_t i) -> T& { return y[i]; });
        }
        kept.push_back(j);
        ++row;
    }
    if (kept.size() < n) {
        result.rank_deficient = true;
    }

    // Back substitution on the kept columns; row index equals position in `kept`.
    for (std::size_t kk = kept.size(); kk-- > 0;) {
        T s = y[kk];
        for (std::size_t ll = kk + 1; ll < kept.size(); ++ll) {
            s -= r(kk, kept[ll]) * result.x[kept[ll]];
        }
        result.x[kept[kk]] = s / r(kk, kept[kk]);
    }
    double res = 0.0;
    for (std::size_t i = kept.size(); i < m; ++i) {
        res += std::norm(y[i]);
    }
    result.residual = std::sqrt(res);
    return result;
}

} // namespace

Spectrum hermitian_eig(const ComplexMatrix& m, double hermitian_tol) {
    if (!m.is_square() || m.empty()) {
        throw Error(ErrorCode::ShapeMismatch, "hermitian_eig requires a nonempty square matrix");
    }
    if (hermiticity_defect(m) > hermitian_tol * std::max(1.0, m.frobenius_norm())) {
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    // Symmetrize so the rotations act on an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());

    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= kMachineEps * scale) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= std::numeric_limits<double>::min()) {
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = sign_of(tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const auto rot = PlaneRotation::make(t, std::conj(apq / mag));
                rot.apply_right(a, p, q);
                rot.apply_left_adjoint(a, p, q);
                rot.apply_right(v, p, q);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (sweep == kMaxSweeps && off_diagonal_norm(a) > 1e3 * kMachineEps * scale) {
        throw Error(ErrorCode::NoConvergence, "Jacobi eigensolver exceeded its sweep budget");
    }

    RealVector diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = a(i, i).real();
    }
    const auto order = descending_order(diag);
    Spectrum out;
    out.values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
    }
    out.vectors = permute_columns(v, order);
    return out;
}

SvdResult svd(const ComplexMatrix& m) {
    if (m.empty()) {
        throw Error(ErrorCode::ShapeMismatch, "svd requires a nonempty matrix");
    }
    if (m.rows() < m.cols()) {
        SvdResult t = svd(m.adjoint());
        return {std::move(t.v), std::move(t.singular_values), std::move(t.u)};
    }
    const std::size_t rows = m.rows();
    const std::size_t n = m.cols();
    ComplexMatrix u = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    // Relative orthogonality test as in one-sided Jacobi codes, plus an
    // absolute floor so columns at rounding level do not keep rotating.
    const double rel_tol = kMachineEps * std::sqrt(static_cast<double>(rows));
    double frob_sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        frob_sq += column_norm_sq(u, j);
    }
    const double abs_floor = kMachineEps * kMachineEps * frob_sq;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double alpha = column_norm_sq(u, p);
                const double beta = column_norm_sq(u, q);
                const Complex gamma = column_inner(u, p, q);
                const double mag = std::abs(gamma);
                if (mag <= rel_tol * std::sqrt(alpha * beta) || mag <= abs_floor ||
                    mag <= std::numeric_limits<double>::min()) {
                    continue;
                }
                converged = false;
                const double zeta = (beta - alpha) / (2.0 * mag);
                const double t = sign_of(zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const auto rot = PlaneRotation::make(t, std::conj(gamma / mag));
                rot.apply_right(u, p, q);
                rot.apply_right(v, p, q);
            }
        }
    }
    if (!converged) {
        throw Error(ErrorCode::NoConvergence, "one-sided Jacobi SVD exceeded its sweep budget");
    }

    RealVector sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        sigma[j] = std::sqrt(column_norm_sq(u, j));
    }
    const auto order = descending_order(sigma);
    SvdResult out;
    out.singular_values.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.singular_values[k] = sigma[order[k]];
    }
    out.v = permute_columns(v, order);
    ComplexMatrix us = permute_columns(u, order);

    // Columns with negligible singular value carry no reliable direction; they
    // are rebuilt as an orthonormal completion of the others.
    const double cutoff = std::max(out.singular_values.front(), 1.0) * 1e-13;
    ComplexMatrix basis(rows, n);
    std::vector<bool> reliable(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = out.singular_values[j];
        reliable[j] = s > cutoff;
        for (std::size_t i = 0; i < rows; ++i) {
            basis(i, j) = reliable[j] ? us(i, j) / s : Complex{};
        }
    }
    if (std::find(reliable.begin(), reliable.end(), false) != reliable.end()) {
        basis = orthonormalize_columns(basis);
    }
    out.u = std::move(basis);
    return out;
}

double vec_p_norm(std::span<const double> x, double p) {
    if (!(p >= 1.0)) {
        throw Error(ErrorCode::BadExponent, "p-norm requires p >= 1");
    }
    double biggest = 0.0;
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, "p-norm of a non-finite vector");
        }
        biggest = std::max(biggest, std::abs(v));
    }
    if (std::isinf(p) || biggest == 0.0) {
        return biggest;
    }
    double s = 0.0;
    for (double v : x) {
        s += std::pow(std::abs(v) / biggest, p);
    }
    return biggest * std::pow(s, 1.0 / p);
}

double vec_p_norm(std::span<const Complex> x, double p) {
    RealVector mags(x.size());
    std::transform(x.begin(), x.end(), mags.begin(), [](const Complex& z) { return std::abs(z); });
    return vec_p_norm(std::span<const double>(mags), p);
}

double transformed_norm(std::span<const Complex> x, const ComplexMatrix& t, double p, double max_condition) {
    if (!t.is_square() || t.cols() != x.size()) {
        throw Error(ErrorCode::ShapeMismatch, "transformed_norm: map must be square and match the vector length");
    }
    const auto sv = svd(t).singular_values;
    if (sv.back() <= 0.0 || sv.front() / sv.back() >= max_condition) {
        throw Error(ErrorCode::SingularMap, "transformation is not numerically invertible");
    }
    const auto tx = t * x;
    return vec_p_norm(std::span<const Complex>(tx), p);
}

double schatten_norm(const ComplexMatrix& m, double p) {
    if (!(p >= 1.0)) {
        throw Error(ErrorCode::BadExponent, "Schatten norm requires p >= 1");
    }
    const auto sv = svd(m).singular_values;
    return vec_p_norm(std::span<const double>(sv), p);
}

std::size_t eps_rank(std::span<const double> values, double tol) {
    if (values.empty()) {
        return 0;
    }
    const double threshold = tol * std::max(1.0, values.front());
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) { return v > threshold; }));
}

LeastSquaresResult<double> least_squares(const RealMatrix& a, std::span<const double> b) {
    return householder_least_squares(a, b);
}

LeastSquaresResult<Complex> least_squares(const ComplexMatrix& a, std::span<const Complex> b) {
    return householder_least_squares(a, b);
}

NnlsResult nnls_feasible(const RealMatrix& a, std::span<const double> b, double tol) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();
    if (b.size() != m) {
        throw Error(ErrorCode::ShapeMismatch, "nnls: rhs length differs from row count");
    }
    for (double v : b) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, "nnls: rhs is not finite");
        }
    }
    NnlsResult result;
    result.weights.assign(n, 0.0);
    double b_norm = 0.0;
    for (double v : b) {
        b_norm += v * v;
    }
    b_norm = std::sqrt(b_norm);
    if (n == 0 || b_norm == 0.0) {
        result.residual = b_norm;
        return result;
    }
    double max_col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            s += a(i, j) * a(i, j);
        }
        max_col = std::max(max_col, s);
    }
    const double dual_tol = tol * std::max(std::sqrt(max_col), 1e-300) * b_norm;
    const std::size_t max_iterations = 100 * n;

    RealVector& x = result.weights;
    std::vector<bool> passive(n, false);
    std::vector<bool> blocked(n, false);
    RealVector residual(b.begin(), b.end());

    const auto solve_passive = [&](std::vector<std::size_t>& cols) {
        cols.clear();
        for (std::size_t j = 0; j < n; ++j) {
            if (passive[j]) {
                cols.push_back(j);
            }
        }
        RealMatrix sub(m, cols.size());
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t k = 0; k < cols.size(); ++k) {
                sub(i, k) = a(i, cols[k]);
            }
        }
        return least_squares(sub, b);
    };
    const auto update_residual = [&]() {
        for (std::size_t i = 0; i < m; ++i) {
            double s = b[i];
            for (std::size_t j = 0; j < n; ++j) {
                if (x[j] != 0.0) {
                    s -= a(i, j) * x[j];
                }
            }
            residual[i] = s;
        }
    };

    std::vector<std::size_t> cols;
    while (true) {
        // Gradient of -0.5 ||Ax - b||^2 with respect to inactive weights.
        std::size_t entering = n;
        double best = dual_tol;
        for (std::size_t j = 0; j < n; ++j) {
            if (passive[j] || blocked[j]) {
                continue;
            }
            double w = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                w += a(i, j) * residual[i];
            }
            if (w > best) {
                best = w;
                entering = j;
            }
        }
        if (entering == n) {
            break;
        }
        passive[entering] = true;

        bool first_pass = true;
        while (true) {
            if (++result.iterations > max_iterations) {
                throw Error(ErrorCode::NoConvergence, "nnls: active-set iteration budget exceeded");
            }
            const auto ls = solve_passive(cols);
            std::size_t entering_pos = cols.size();
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (cols[k] == entering) {
                    entering_pos = k;
                }
            }
            if (first_pass && entering_pos < cols.size() && ls.x[entering_pos] <= 0.0) {
                // Round-off let a column in whose LS coefficient is not positive.
                passive[entering] = false;
                blocked[entering] = true;
                break;
            }
            first_pass = false;
            bool all_positive = true;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (ls.x[k] <= 0.0) {
                    all_positive = false;
                }
            }
            if (all_positive) {
                for (std::size_t k = 0; k < cols.size(); ++k) {
                    x[cols[k]] = ls.x[k];
                }
                std::fill(blocked.begin(), blocked.end(), false);
                break;
            }
            double alpha = 1.0;
            std::size_t leaving = n;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (ls.x[k] <= 0.0) {
                    const double xj = x[cols[k]];
                    const double ratio = xj / (xj - ls.x[k]);
                    if (ratio < alpha || leaving == n) {
                        alpha = ratio;
                        leaving = cols[k];
                    }
                }
            }
            for (std::size_t k = 0; k < cols.size(); ++k) {
                x[cols[k]] += alpha * (ls.x[k] - x[cols[k]]);
            }
            x[leaving] = 0.0;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                if (x[cols[k]] <= 0.0) {
                    x[cols[k]] = 0.0;
                    passive[cols[k]] = false;
                }
            }
            std::fill(blocked.begin(), blocked.end(), false);
        }
        update_residual();
    }
    update_residual();
    double res = 0.0;
    for (double r : residual) {
        res += r * r;
    }
    result.residual = std::sqrt(res);
    return result;
}

RealVector realify(const ComplexMatrix& h) {
    if (!h.is_square()) {
        throw Error(ErrorCode::ShapeMismatch, "realify requires a square matrix");
    }
    const std::size_t d = h.rows();
    RealVector out;
    out.reserve(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        out.push_back(h(i, i).real());
    }
    const double root2 = std::sqrt(2.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const Complex avg = 0.5 * (h(i, j) + std::conj(h(j, i)));
            out.push_back(root2 * avg.real());
            out.push_back(root2 * avg.imag());
        }
    }
    return out;
}

ComplexMatrix gram(const ComplexMatrix& columns) {
    const std::size_t k = columns.cols();
    ComplexMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            const Complex s = column_inner(columns, i, j);
            g(i, j) = s;
            g(j, i) = std::conj(s);
        }
    }
    return g;
}

ComplexMatrix hermitian_inverse(const ComplexMatrix& m, double tol) {
    const auto spec = hermitian_eig(m);
    if (spec.values.back() <= tol * std::max(spec.values.front(), 0.0)) {
        throw Error(ErrorCode::SingularMap, "matrix is singular within tolerance");
    }
    const std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double inv = 1.0 / spec.values[k];
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = spec.vectors(i, k) * inv;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += vik * std::conj(spec.vectors(j, k));
            }
        }
    }
    return out;
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    ComplexMatrix q(rows, cols);
    std::size_t next_basis = 0;
    const auto project_out = [&](ComplexVector& v, std::size_t upto) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < upto; ++k) {
                Complex c{};
                for (std::size_t i = 0; i < rows; ++i) {
                    c += std::conj(q(i, k)) * v[i];
                }
                for (std::size_t i = 0; i < rows; ++i) {
                    v[i] -= c * q(i, k);
                }
            }
        }
    };
    for (std::size_t j = 0; j < cols; ++j) {
        ComplexVector v = m.column(j);
        const double original = norm2(v);
        project_out(v, j);
        double nv = norm2(v);
        while (original == 0.0 || nv <= 1e-10 * original) {
            if (next_basis >= rows) {
                throw Error(ErrorCode::ShapeMismatch, "cannot complete more columns than rows");
            }
            v.assign(rows, Complex{});
            v[next_basis++] = 1.0;
            project_out(v, j);
            nv = norm2(v);
            if (nv > 1e-6) {
                break;
            }
        }
        for (std::size_t i = 0; i < rows; ++i) {
            q(i, j) = v[i] / nv;
        }
    }
    return q;
}

} // namespace qorder::linalg
