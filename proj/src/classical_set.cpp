#include "qorder/classical_set.hpp"

#include <cmath>
#include <string>

#include "qorder/linalg.hpp"
#include "qorder/random.hpp"

namespace qorder {

namespace {

constexpr double kDuplicateOverlap = 1.0 - 1e-12;

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    ComplexVector out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a) {
        for (const auto& y : b) {
            out.push_back(x * y);
        }
    }
    return out;
}

} // namespace

std::string_view to_string(SetKind kind) noexcept {
    switch (kind) {
    case SetKind::CoherentGrid: return "coherent-grid";
    case SetKind::ProductGrid: return "product-grid";
    case SetKind::Custom: return "custom";
    }
    return "custom";
}

SetKind set_kind_from_string(std::string_view name) {
    if (name == "coherent-grid") {
        return SetKind::CoherentGrid;
    }
    if (name == "product-grid") {
        return SetKind::ProductGrid;
    }
    if (name == "custom") {
        return SetKind::Custom;
    }
    throw Error(ErrorCode::ParseError, "unknown set kind '" + std::string(name) + "'");
}

ClassicalSetModel::ClassicalSetModel(std::vector<PureState> generators, SetKind kind, GridParameters params)
    : kind_(kind), params_(std::move(params)) {
    if (generators.empty()) {
        throw Error(ErrorCode::EmptySet, "a classical set needs at least one generator");
    }
    dim_ = generators.front().dim();
    for (auto& g : generators) {
        if (g.dim() != dim_) {
            throw Error(ErrorCode::ShapeMismatch, "generators differ in dimension");
        }
        PureState unit = g.normalized();
        bool duplicate = false;
        for (const auto& kept : generators_) {
            if (std::abs(inner(kept.amplitudes(), unit.amplitudes())) >= kDuplicateOverlap) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            generators_.push_back(std::move(unit));
        }
    }
    realified_ = RealMatrix(dim_ * dim_, generators_.size());
    for (std::size_t j = 0; j < generators_.size(); ++j) {
        const auto& amps = generators_[j].amplitudes();
        projectors_.push_back(outer(amps, amps));
        realified_.set_column(j, linalg::realify(projectors_.back()));
    }
}

DensityMatrix ClassicalSetModel::hull_point(std::span<const double> weights) const {
    if (weights.size() != size()) {
        throw Error(ErrorCode::ShapeMismatch, "one weight per generator required");
    }
    ComplexMatrix sum(dim_, dim_);
    for (std::size_t i = 0; i < size(); ++i) {
        if (weights[i] < 0.0) {
            throw Error(ErrorCode::BadWeight, "hull weights must be nonnegative");
        }
        if (weights[i] != 0.0) {
            sum += projectors_[i] * Complex{weights[i]};
        }
    }
    return DensityMatrix::unchecked(std::move(sum), params_.shape);
}

ComplexMatrix ClassicalSetModel::generator_matrix() const {
    ComplexMatrix c(dim_, size());
    for (std::size_t j = 0; j < size(); ++j) {
        c.set_column(j, generators_[j].amplitudes());
    }
    return c;
}

ConeFit fit_cone(const ComplexMatrix& target, const ClassicalSetModel& set, double trace_weight) {
    if (!target.is_square() || target.rows() != set.dim()) {
        throw Error(ErrorCode::ShapeMismatch, "target dimension differs from the classical set");
    }
    const RealMatrix& gens = set.realified();
    const std::size_t rows = gens.rows();
    const std::size_t k = gens.cols();
    RealMatrix a(rows + 1, k);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            a(i, j) = gens(i, j);
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        a(rows, j) = trace_weight;
    }
    RealVector b = linalg::realify(target);
    b.push_back(trace_weight * target.trace().real());

    auto nnls = linalg::nnls_feasible(a, b);
    ConeFit fit;
    fit.weights = std::move(nnls.weights);
    const auto recon = gens * std::span<const double>(fit.weights);
    double res = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        const double diff = b[i] - recon[i];
        res += diff * diff;
    }
    fit.residual = std::sqrt(res);
    return fit;
}

MembershipResult membership(const DensityMatrix& rho, const ClassicalSetModel& set, const MembershipOptions& opts) {
    if (rho.dim() != set.dim()) {
        throw Error(ErrorCode::ShapeMismatch, "state dimension differs from the classical set");
    }
    auto fit = fit_cone(rho.matrix(), set, opts.trace_weight);
    MembershipResult out;
    out.residual = fit.residual;
    out.weights = std::move(fit.weights);
    out.inside = out.residual <= opts.tol * rho.trace();
    return out;
}

ComplexVector coherent_state(std::size_t n_max, Complex alpha) {
    ComplexVector amps(n_max + 1);
    Complex term = 1.0;
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (n > 0) {
            term *= alpha / std::sqrt(static_cast<double>(n));
        }
        amps[n] = term;
    }
    const double norm = norm2(amps);
    for (auto& a : amps) {
        a /= norm;
    }
    return amps;
}

ClassicalSetModel coherent_grid(std::size_t n_max, const std::vector<Complex>& alphas) {
    if (n_max < 1) {
        throw Error(ErrorCode::TruncationTooSmall, "Fock cutoff must be at least 1");
    }
    if (alphas.empty()) {
        throw Error(ErrorCode::EmptySet, "coherent grid needs at least one amplitude");
    }
    std::vector<PureState> gens;
    for (const auto& alpha : alphas) {
        if (!detail::is_finite(alpha)) {
            throw Error(ErrorCode::NonFinite, "coherent amplitude is not finite");
        }
        if (std::norm(alpha) > static_cast<double>(n_max) / 4.0) {
            throw Error(ErrorCode::TruncationTooSmall,
                        "|alpha|^2 exceeds n_max/4; raise the Fock cutoff for this amplitude");
        }
        gens.emplace_back(coherent_state(n_max, alpha));
    }
    GridParameters params;
    params.n_max = n_max;
    params.alphas = alphas;
    return ClassicalSetModel(std::move(gens), SetKind::CoherentGrid, std::move(params));
}

ClassicalSetModel product_grid(BipartiteShape shape, std::size_t count, std::uint64_t seed) {
    const std::size_t d = shape.dim();
    if (count < d * d) {
        throw Error(ErrorCode::InvalidArgument, "product grid needs at least (dim_a*dim_b)^2 generators");
    }
    Rng rng(seed);
    std::vector<PureState> gens;
    gens.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const auto a = random::haar_state(shape.dim_a, rng);
        const auto b = random::haar_state(shape.dim_b, rng);
        gens.emplace_back(kron(a, b), shape);
    }
    GridParameters params;
    params.shape = shape;
    params.count = count;
    params.seed = seed;
    return ClassicalSetModel(std::move(gens), SetKind::ProductGrid, std::move(params));
}

ClassicalSetModel custom_set(std::vector<PureState> generators) {
    if (generators.empty()) {
        throw Error(ErrorCode::EmptySet, "custom set needs at least one generator");
    }
    return ClassicalSetModel(std::move(generators), SetKind::Custom);
}

} // namespace qorder
