#include "qorder/states.hpp"

#include <cmath>
#include <sstream>

#include "qorder/linalg.hpp"

namespace qorder {

BipartiteShape::BipartiteShape(std::size_t a, std::size_t b) : dim_a(a), dim_b(b) {
    if (a == 0 || b == 0) {
        throw Error(ErrorCode::InvalidArgument, "bipartite factors must be positive");
    }
}

PureState::PureState(ComplexVector amplitudes, std::optional<BipartiteShape> shape)
    : amplitudes_(std::move(amplitudes)), shape_(shape) {
    if (amplitudes_.empty()) {
        throw Error(ErrorCode::InvalidState, "pure state needs at least one amplitude");
    }
    for (const auto& z : amplitudes_) {
        if (!detail::is_finite(z)) {
            throw Error(ErrorCode::NonFinite, "pure state amplitude is not finite");
        }
    }
    if (!(norm() > 0.0)) {
        throw Error(ErrorCode::InvalidState, "pure state has zero norm");
    }
    if (shape_ && shape_->dim() != amplitudes_.size()) {
        throw Error(ErrorCode::ShapeMismatch, "bipartite shape does not factor the state dimension");
    }
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index outside the dimension");
    }
    ComplexVector v(dim);
    v[k] = 1.0;
    return PureState(std::move(v));
}

PureState PureState::normalized() const {
    ComplexVector v = amplitudes_;
    const double n = norm();
    for (auto& z : v) {
        z /= n;
    }
    return PureState(std::move(v), shape_);
}

std::string StateDiagnostics::summary() const {
    std::ostringstream os;
    os << "hermiticity_defect=" << hermiticity_defect << " min_eigenvalue=" << min_eigenvalue << " trace=" << trace
       << (passed() ? " PASS" : " FAIL");
    if (!hermitian) {
        os << " (not Hermitian)";
    }
    if (!positive) {
        os << " (negative eigenvalue)";
    }
    if (!positive_trace) {
        os << " (nonpositive trace)";
    }
    return os.str();
}

StateDiagnostics validate(const ComplexMatrix& m) {
    StateDiagnostics d;
    if (!m.is_square() || m.empty()) {
        d.hermiticity_defect = INFINITY;
        d.min_eigenvalue = -INFINITY;
        return d;
    }
    d.hermiticity_defect = hermiticity_defect(m);
    d.hermitian = d.hermiticity_defect <= kHermitianTolerance * std::max(1.0, m.frobenius_norm());
    const ComplexMatrix herm_part = (m + m.adjoint()) * Complex{0.5};
    d.min_eigenvalue = linalg::hermitian_eig(herm_part).values.back();
    d.trace = m.trace().real();
    d.positive_trace = d.trace > 0.0;
    d.positive = d.min_eigenvalue >= -kPsdTolerance * std::max(d.trace, 0.0);
    return d;
}

StateDiagnostics validate(const DensityMatrix& rho) { return validate(rho.matrix()); }

DensityMatrix::DensityMatrix(ComplexMatrix m, std::optional<BipartiteShape> shape) : m_(std::move(m)), shape_(shape) {
    const auto diag = validate(m_);
    if (!diag.passed()) {
        throw Error(ErrorCode::InvalidState, "not a density matrix: " + diag.summary());
    }
    if (shape_ && shape_->dim() != m_.rows()) {
        throw Error(ErrorCode::ShapeMismatch, "bipartite shape does not factor the state dimension");
    }
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m, std::optional<BipartiteShape> shape) {
    if (!m.is_square()) {
        throw Error(ErrorCode::ShapeMismatch, "density matrix must be square");
    }
    DensityMatrix out;
    out.m_ = std::move(m);
    out.shape_ = shape;
    return out;
}

DensityMatrix normalize(const DensityMatrix& rho) {
    const double t = rho.trace();
    if (!(t > 0.0)) {
        throw Error(ErrorCode::ZeroTrace, "cannot normalize a state with nonpositive trace");
    }
    return DensityMatrix::unchecked(rho.matrix() * Complex{1.0 / t}, rho.bipartite());
}

bool is_normalized(const DensityMatrix& rho, double tol) { return std::abs(rho.trace() - 1.0) <= tol; }

DensityMatrix mix(std::span<const DensityMatrix> states, std::span<const double> weights) {
    if (states.empty() || states.size() != weights.size()) {
        throw Error(ErrorCode::ShapeMismatch, "mix needs one weight per state");
    }
    bool any_positive = false;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw Error(ErrorCode::BadWeight, "mixing weights must be finite and nonnegative");
        }
        any_positive = any_positive || w > 0.0;
    }
    if (!any_positive) {
        throw Error(ErrorCode::BadWeight, "at least one mixing weight must be positive");
    }
    const std::size_t d = states.front().dim();
    ComplexMatrix sum(d, d);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].dim() != d) {
            throw Error(ErrorCode::ShapeMismatch, "mixed states differ in dimension");
        }
        sum += states[i].matrix() * Complex{weights[i]};
    }
    return DensityMatrix::unchecked(std::move(sum), states.front().bipartite());
}

DensityMatrix from_pure(const PureState& psi) {
    return DensityMatrix::unchecked(outer(psi.amplitudes(), psi.amplitudes()), psi.bipartite());
}

DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix::unchecked(ComplexMatrix::identity(dim) * Complex{1.0 / static_cast<double>(dim)});
}

} // namespace qorder
