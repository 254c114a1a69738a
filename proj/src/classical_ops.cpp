#include "qorder/classical_ops.hpp"

#include <cmath>

#include "qorder/linalg.hpp"

namespace qorder {

namespace {

constexpr double kInverseTolerance = 1e-8;
constexpr double kZeroTrace = 1e-14;

ComplexMatrix matrix_unit(std::size_t d, std::size_t j, std::size_t k) {
    ComplexMatrix e(d, d);
    e(j, k) = 1.0;
    return e;
}

double distance_to_identity(const ClassicalOperation& op, const ClassicalOperation& inv) {
    double worst = 0.0;
    const std::size_t d = inv.dim_in();
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) {
            const ComplexMatrix e = matrix_unit(d, j, k);
            worst = std::max(worst, (op.act(inv.act(e)) - e).frobenius_norm());
        }
    }
    return worst;
}

} // namespace

ClassicalOperation::ClassicalOperation(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus,
                                       std::string label, std::shared_ptr<const ClassicalOperation> inverse)
    : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), label_(std::move(label)),
      inverse_(std::move(inverse)) {
    if (dim_in_ == 0 || dim_out_ == 0) {
        throw Error(ErrorCode::InvalidArgument, "operation dimensions must be positive");
    }
    if (kraus_.empty()) {
        throw Error(ErrorCode::InvalidArgument, "operation needs at least one Kraus operator");
    }
    for (const auto& a : kraus_) {
        if (a.rows() != dim_out_ || a.cols() != dim_in_) {
            throw Error(ErrorCode::ShapeMismatch, "Kraus operator shape differs from dim_out x dim_in");
        }
    }
    if (inverse_) {
        if (inverse_->dim_in() != dim_out_ || inverse_->dim_out() != dim_in_) {
            throw Error(ErrorCode::ShapeMismatch, "inverse has the wrong shape");
        }
        if (distance_to_identity(*this, *inverse_) > kInverseTolerance ||
            distance_to_identity(*inverse_, *this) > kInverseTolerance) {
            throw Error(ErrorCode::InvalidArgument, "supplied inverse does not undo the operation");
        }
    }
}

ClassicalOperation ClassicalOperation::identity(std::size_t dim) {
    auto id = std::make_shared<ClassicalOperation>(dim, dim, std::vector{ComplexMatrix::identity(dim)}, "identity");
    return ClassicalOperation(dim, dim, {ComplexMatrix::identity(dim)}, "identity", id);
}

ComplexMatrix ClassicalOperation::act(const ComplexMatrix& m) const {
    if (m.rows() != dim_in_ || m.cols() != dim_in_) {
        throw Error(ErrorCode::ShapeMismatch, "input dimension differs from the operation");
    }
    ComplexMatrix out(dim_out_, dim_out_);
    for (const auto& a : kraus_) {
        out += a * m * a.adjoint();
    }
    return out;
}

DensityMatrix apply(const ClassicalOperation& op, const DensityMatrix& rho) {
    ComplexMatrix out = op.act(rho.matrix());
    // Symmetrize away rounding so downstream Hermitian solvers accept the result.
    out = (out + out.adjoint()) * Complex{0.5};
    std::optional<BipartiteShape> shape;
    if (op.dim_in() == op.dim_out()) {
        shape = rho.bipartite();
    }
    return DensityMatrix::unchecked(std::move(out), shape);
}

double action_distance(const ClassicalOperation& a, const ClassicalOperation& b) {
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
        throw Error(ErrorCode::ShapeMismatch, "operations differ in shape");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < a.dim_in(); ++j) {
        for (std::size_t k = 0; k < a.dim_in(); ++k) {
            const ComplexMatrix e = matrix_unit(a.dim_in(), j, k);
            worst = std::max(worst, (a.act(e) - b.act(e)).frobenius_norm());
        }
    }
    return worst;
}

ClassicalOperation compose(const ClassicalOperation& outer, const ClassicalOperation& inner) {
    if (outer.dim_in() != inner.dim_out()) {
        throw Error(ErrorCode::ShapeMismatch, "inner output dimension differs from outer input dimension");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(outer.kraus().size() * inner.kraus().size());
    for (const auto& a : outer.kraus()) {
        for (const auto& b : inner.kraus()) {
            kraus.push_back(a * b);
        }
    }
    std::shared_ptr<const ClassicalOperation> inverse;
    if (outer.inverse() && inner.inverse()) {
        inverse = std::make_shared<ClassicalOperation>(compose(*inner.inverse(), *outer.inverse()));
    }
    return ClassicalOperation(inner.dim_in(), outer.dim_out(), std::move(kraus),
                              outer.label() + " o " + inner.label(), std::move(inverse));
}

ClassicalOperation convex_combine(const ClassicalOperation& a, const ClassicalOperation& b, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorCode::BadWeight, "convex weight must lie in [0, 1]");
    }
    if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
        throw Error(ErrorCode::ShapeMismatch, "convex combination needs equal shapes");
    }
    std::vector<ComplexMatrix> kraus;
    if (lambda > 0.0) {
        for (const auto& k : a.kraus()) {
            kraus.push_back(k * Complex{std::sqrt(lambda)});
        }
    }
    if (lambda < 1.0) {
        for (const auto& k : b.kraus()) {
            kraus.push_back(k * Complex{std::sqrt(1.0 - lambda)});
        }
    }
    return ClassicalOperation(a.dim_in(), a.dim_out(), std::move(kraus),
                              std::to_string(lambda) + " " + a.label() + " + rest " + b.label());
}

ClassicalOperation mixing_op(const DensityMatrix& gamma, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorCode::BadWeight, "mixing weight must lie in [0, 1]");
    }
    const std::size_t d = gamma.dim();
    std::vector<ComplexMatrix> kraus;
    if (lambda > 0.0) {
        kraus.push_back(ComplexMatrix::identity(d) * Complex{std::sqrt(lambda)});
    }
    if (lambda < 1.0) {
        const auto spec = linalg::hermitian_eig(gamma.matrix());
        const double scale = spec.values.empty() ? 0.0 : std::max(1.0, spec.values.front());
        for (std::size_t j = 0; j < d; ++j) {
            const double w = spec.values[j];
            if (w <= kZeroTrace * scale) {
                continue;
            }
            const auto g = spec.vectors.column(j);
            const double amp = std::sqrt((1.0 - lambda) * w);
            for (std::size_t k = 0; k < d; ++k) {
                ComplexMatrix a(d, d);
                for (std::size_t r = 0; r < d; ++r) {
                    a(r, k) = amp * g[r];
                }
                kraus.push_back(std::move(a));
            }
        }
    }
    if (kraus.empty()) {
        kraus.push_back(ComplexMatrix(d, d));
    }
    return ClassicalOperation(d, d, std::move(kraus), "mix(" + std::to_string(lambda) + ")");
}

ClassicalOperation trace_replace_op(const DensityMatrix& gamma) {
    auto op = mixing_op(gamma, 0.0);
    return ClassicalOperation(op.dim_in(), op.dim_out(), op.kraus(), "replace");
}

ClassicalOperation classical_function_op(std::span<const Complex> a, std::span<const std::size_t> f,
                                         const ClassicalSetModel& set) {
    const std::size_t k = set.size();
    const std::size_t d = set.dim();
    if (a.size() != k || f.size() != k) {
        throw Error(ErrorCode::ShapeMismatch, "need one amplitude and one image index per generator");
    }
    for (std::size_t j = 0; j < k; ++j) {
        if (f[j] >= k) {
            throw Error(ErrorCode::IndexOutOfRange, "index map points outside the generator list");
        }
        if (!detail::is_finite(a[j])) {
            throw Error(ErrorCode::NonFinite, "amplitude is not finite");
        }
    }
    const ComplexMatrix c = set.generator_matrix();
    const ComplexMatrix g = linalg::gram(c);
    const auto spec = linalg::hermitian_eig(g);
    if (linalg::eps_rank(spec.values, 1e-10) < k) {
        throw Error(ErrorCode::DependentGenerators, "generators are linearly dependent");
    }
    const ComplexMatrix g_inv = linalg::hermitian_inverse(g, 1e-12);
    ComplexMatrix cf(d, k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto& img = set.generators()[f[j]].amplitudes();
        for (std::size_t r = 0; r < d; ++r) {
            cf(r, j) = a[j] * img[r];
        }
    }
    ComplexMatrix op = cf * g_inv * c.adjoint();
    return ClassicalOperation(d, d, {std::move(op)}, "function");
}

ClassicalOperation invertible_function_op(std::span<const Complex> a, std::span<const std::size_t> f,
                                          const ClassicalSetModel& set) {
    const std::size_t k = set.size();
    if (k != set.dim()) {
        throw Error(ErrorCode::InvalidArgument, "invertible operations need generators forming a basis");
    }
    if (a.size() != k || f.size() != k) {
        throw Error(ErrorCode::ShapeMismatch, "need one amplitude and one image index per generator");
    }
    std::vector<std::size_t> f_inv(k, k);
    std::vector<Complex> a_inv(k);
    for (std::size_t j = 0; j < k; ++j) {
        if (f[j] >= k) {
            throw Error(ErrorCode::IndexOutOfRange, "index map points outside the generator list");
        }
        if (f_inv[f[j]] != k) {
            throw Error(ErrorCode::InvalidArgument, "index map is not a permutation");
        }
        if (std::abs(std::abs(a[j]) - 1.0) > 1e-12) {
            throw Error(ErrorCode::InvalidArgument, "amplitudes must have modulus one");
        }
        f_inv[f[j]] = j;
        a_inv[f[j]] = 1.0 / a[j];
    }
    auto inv = std::make_shared<ClassicalOperation>(classical_function_op(a_inv, f_inv, set));
    auto fwd = classical_function_op(a, f, set);
    return ClassicalOperation(fwd.dim_in(), fwd.dim_out(), fwd.kraus(), "invertible", std::move(inv));
}

ClassicalityReport check_classical(const ClassicalOperation& op, const ClassicalSetModel& set, double tol) {
    if (op.dim_in() != set.dim() || op.dim_out() != set.dim()) {
        throw Error(ErrorCode::ShapeMismatch, "operation and classical set differ in dimension");
    }
    ClassicalityReport report;
    report.classical = true;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto image = apply(op, DensityMatrix::unchecked(set.projector(i)));
        const double t = image.trace();
        double rel = 0.0;
        if (t > kZeroTrace) {
            const auto m = membership(image, set, {tol, kDefaultTraceWeight});
            rel = m.residual / t;
            if (!m.inside) {
                report.classical = false;
                report.failing.push_back(i);
            }
        } else if (image.matrix().frobenius_norm() > kZeroTrace) {
            rel = INFINITY;
            report.classical = false;
            report.failing.push_back(i);
        }
        report.residuals.push_back(rel);
    }
    return report;
}

MonotoneReport check_monotone(const ClassicalOperation& op, const DensityMatrix& rho, const DensityMatrix& rho_prime,
                              const ClassicalSetModel& set, const PreorderOptions& opts) {
    MonotoneReport report;
    report.before = preorder_leq(rho, rho_prime, set, opts);
    const auto a = normalize(apply(op, rho));
    const auto b = normalize(apply(op, rho_prime));
    report.after = preorder_leq(a, b, set, opts);
    return report;
}

OperationOrderReport check_operation_order(const ClassicalOperation& op, const DensityMatrix& rho,
                                           const ClassicalSetModel& set, const PreorderOptions& opts) {
    OperationOrderReport report;
    report.classicality = check_classical(op, set, opts.tol);
    const auto image = apply(op, rho);
    if (image.trace() > kZeroTrace) {
        report.mixture = preorder_leq(normalize(image), rho, set, opts);
    }
    return report;
}

InvertibleReport check_invertible(const ClassicalOperation& op, const ClassicalSetModel& set, double tol) {
    if (op.inverse() == nullptr) {
        throw Error(ErrorCode::InvalidArgument, "operation has no stored inverse");
    }
    InvertibleReport report;
    report.forward = check_classical(op, set, tol);
    report.backward = check_classical(*op.inverse(), set, tol);
    report.inverse_defect = std::max(distance_to_identity(op, *op.inverse()), distance_to_identity(*op.inverse(), op));
    return report;
}

} // namespace qorder
