#include "qorder/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qorder/linalg.hpp"
#include "qorder/random.hpp"

namespace qorder {

namespace {

constexpr double kEigenCutoff = 1e-12;
constexpr double kCertificateTolerance = 1e-8;
constexpr double kPptTolerance = 1e-9;
constexpr std::size_t kExhaustiveBudget = 5'000'000;
constexpr std::size_t kTruncationSubsetBudget = 256;
constexpr std::size_t kSubgradientSteps = 200;

double binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0.0;
    }
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c;
}

// Calls visit(subset) for each k-subset of {0..n-1} in lexicographic order until it returns true.
template<typename Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
    if (k == 0 || k > n) {
        return false;
    }
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
        if (visit(std::as_const(idx))) {
            return true;
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            return false;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

ComplexMatrix columns_of(const ClassicalSetModel& set, std::span<const std::size_t> subset) {
    ComplexMatrix a(set.dim(), subset.size());
    for (std::size_t j = 0; j < subset.size(); ++j) {
        a.set_column(j, set.generators()[subset[j]].amplitudes());
    }
    return a;
}

struct Projection {
    ComplexVector vector;
    double residual = 0.0;
};

Projection project_onto(const ClassicalSetModel& set, std::span<const std::size_t> subset, const ComplexVector& x) {
    const ComplexMatrix a = columns_of(set, subset);
    const auto ls = linalg::least_squares(a, std::span<const Complex>(x));
    return {a * std::span<const Complex>(ls.x), ls.residual};
}

// Greedy selection of up to `steps` generators; stops early once the residual drops below tol.
std::vector<std::size_t> orthogonal_matching_pursuit(const ClassicalSetModel& set, const ComplexVector& x,
                                                     std::size_t steps, double tol, Projection* last = nullptr) {
    std::vector<std::size_t> chosen;
    ComplexVector residual = x;
    Projection proj{ComplexVector(x.size()), norm2(x)};
    for (std::size_t step = 0; step < steps && step < set.size(); ++step) {
        std::size_t pick = set.size();
        double best = -1.0;
        for (std::size_t j = 0; j < set.size(); ++j) {
            if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) {
                continue;
            }
            const double overlap = std::abs(inner(set.generators()[j].amplitudes(), residual));
            if (overlap > best) {
                best = overlap;
                pick = j;
            }
        }
        chosen.push_back(pick);
        proj = project_onto(set, chosen, x);
        for (std::size_t i = 0; i < x.size(); ++i) {
            residual[i] = x[i] - proj.vector[i];
        }
        if (proj.residual <= tol) {
            break;
        }
    }
    if (last != nullptr) {
        *last = std::move(proj);
    }
    return chosen;
}

ComplexMatrix coefficient_matrix(std::span<const Complex> amps, BipartiteShape shape) {
    ComplexMatrix c(shape.dim_a, shape.dim_b);
    for (std::size_t i = 0; i < shape.dim_a; ++i) {
        for (std::size_t j = 0; j < shape.dim_b; ++j) {
            c(i, j) = amps[i * shape.dim_b + j];
        }
    }
    return c;
}

std::size_t schmidt_rank(std::span<const Complex> amps, BipartiteShape shape) {
    const auto sv = linalg::svd(coefficient_matrix(amps, shape)).singular_values;
    const double n = norm2(amps);
    RealVector scaled(sv.size());
    for (std::size_t i = 0; i < sv.size(); ++i) {
        scaled[i] = sv[i] / n;
    }
    return linalg::eps_rank(scaled, kSchmidtTolerance);
}

// Best rank-k approximation of a column under the model.
ComplexVector truncate(const ComplexVector& x, const MeasureModel& model, std::size_t k) {
    if (model.shape) {
        const auto s = linalg::svd(coefficient_matrix(x, *model.shape));
        const std::size_t da = model.shape->dim_a;
        const std::size_t db = model.shape->dim_b;
        ComplexVector out(x.size());
        for (std::size_t t = 0; t < std::min(k, s.singular_values.size()); ++t) {
            const double sigma = s.singular_values[t];
            for (std::size_t i = 0; i < da; ++i) {
                for (std::size_t j = 0; j < db; ++j) {
                    out[i * db + j] += sigma * s.u(i, t) * std::conj(s.v(j, t));
                }
            }
        }
        return out;
    }
    const auto& set = *model.set;
    if (binomial(set.size(), k) <= static_cast<double>(kTruncationSubsetBudget)) {
        Projection best{ComplexVector(x.size()), INFINITY};
        for_each_subset(set.size(), k, [&](const std::vector<std::size_t>& subset) {
            auto p = project_onto(set, subset, x);
            if (p.residual < best.residual) {
                best = std::move(p);
            }
            return false;
        });
        return best.vector;
    }
    Projection last;
    orthogonal_matching_pursuit(set, x, k, 0.0, &last);
    return last.vector;
}

double reconstruction_error(const ComplexMatrix& rho, const ComplexMatrix& columns) {
    return (rho - columns * columns.adjoint()).frobenius_norm();
}

Decomposition decomposition_from_columns(const ComplexMatrix& rho, const ComplexMatrix& columns,
                                         std::optional<BipartiteShape> shape) {
    Decomposition dec;
    ComplexMatrix kept(columns.rows(), 0);
    std::vector<ComplexVector> cols;
    for (std::size_t n = 0; n < columns.cols(); ++n) {
        auto c = columns.column(n);
        const double p = std::pow(norm2(c), 2);
        if (p <= kEigenCutoff * kEigenCutoff) {
            continue;
        }
        cols.push_back(c);
        dec.probabilities.push_back(p);
        dec.states.push_back(PureState(std::move(c), shape).normalized());
    }
    ComplexMatrix m(columns.rows(), cols.size());
    for (std::size_t n = 0; n < cols.size(); ++n) {
        m.set_column(n, cols[n]);
    }
    dec.reconstruction_error = reconstruction_error(rho, m);
    return dec;
}

Count minus_one(Count r) {
    if (r.is_infinite()) {
        return r;
    }
    return r.value() == 0 ? Count(0) : Count(r.value() - 1);
}

void check_model(const MeasureModel& model, std::size_t dim) {
    if (model.set == nullptr && !model.shape) {
        throw Error(ErrorCode::InvalidArgument, "measure model needs a classical set or a bipartite shape");
    }
    if (model.dim() != dim) {
        throw Error(ErrorCode::ShapeMismatch, "state dimension differs from the measure model");
    }
}

} // namespace

std::size_t Count::value() const {
    if (!value_) {
        throw Error(ErrorCode::InvalidArgument, "count is infinite");
    }
    return *value_;
}

std::string Count::to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

double f_map(Count mu) {
    if (mu.is_infinite()) {
        return 1.0;
    }
    // 2 atan(1) is exactly pi/2 in binary, so f(1) = 0.5 exactly.
    return 2.0 * std::atan(static_cast<double>(mu.value())) / std::numbers::pi;
}

std::size_t MeasureModel::dim() const {
    if (shape) {
        return shape->dim();
    }
    if (set != nullptr) {
        return set->dim();
    }
    return 0;
}

Count superposition_rank(const PureState& psi, const MeasureModel& model, std::size_t cap) {
    check_model(model, psi.dim());
    if (model.shape) {
        return schmidt_rank(psi.amplitudes(), *model.shape);
    }
    if (cap > kMaxDictionaryCap) {
        throw Error(ErrorCode::InvalidArgument, "dictionary rank cap must not exceed 12");
    }
    const auto& set = *model.set;
    const ComplexVector x = psi.normalized().amplitudes();
    const double tol = kSpanTolerance;

    std::vector<std::size_t> all(set.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    if (project_onto(set, all, x).residual > tol) {
        return Count::infinity();
    }

    Projection greedy;
    const auto chosen = orthogonal_matching_pursuit(set, x, std::min(cap, set.size()), tol, &greedy);
    const std::size_t upper = greedy.residual <= tol ? chosen.size() : std::min(cap, set.size()) + 1;

    for (std::size_t k = 1; k < upper; ++k) {
        if (binomial(set.size(), k) > static_cast<double>(kExhaustiveBudget)) {
            throw Error(ErrorCode::InvalidArgument, "dictionary too large for an exhaustive rank search");
        }
        const bool found = for_each_subset(set.size(), k, [&](const std::vector<std::size_t>& subset) {
            return project_onto(set, subset, x).residual <= tol;
        });
        if (found) {
            return k;
        }
    }
    if (upper <= std::min(cap, set.size())) {
        return upper;
    }
    return Count::infinity();
}

MeasureReport mu_pure(const PureState& psi, const MeasureModel& model, std::size_t cap) {
    MeasureReport report;
    const Count r = superposition_rank(psi, model, cap);
    report.r = r;
    report.mu_lower = minus_one(r);
    report.mu_upper = report.mu_lower;
    report.f_mu = f_map(report.mu_upper);
    report.certificate.states.push_back(psi.normalized());
    report.certificate.probabilities.push_back(1.0);
    report.ensemble_size = 1;
    return report;
}

double partial_transpose_min_eigenvalue(const DensityMatrix& rho, BipartiteShape shape) {
    if (rho.dim() != shape.dim()) {
        throw Error(ErrorCode::ShapeMismatch, "bipartite shape does not factor the state dimension");
    }
    const std::size_t da = shape.dim_a;
    const std::size_t db = shape.dim_b;
    ComplexMatrix pt(rho.dim(), rho.dim());
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < db; ++j) {
            for (std::size_t k = 0; k < da; ++k) {
                for (std::size_t l = 0; l < db; ++l) {
                    pt(i * db + l, k * db + j) = rho.matrix()(i * db + j, k * db + l);
                }
            }
        }
    }
    return linalg::hermitian_eig(pt).values.back();
}

MeasureReport mu_mixed(const DensityMatrix& rho, const MeasureModel& model, const MuOptions& opts) {
    check_model(model, rho.dim());
    if (!is_normalized(rho, 1e-8)) {
        throw Error(ErrorCode::NotNormalized, "measure needs a unit-trace state");
    }
    const std::size_t d = rho.dim();
    MeasureReport report;

    Count lower = 0;
    if (model.set != nullptr) {
        const auto& set = *model.set;
        const auto m = membership(rho, set, {opts.membership_tol, kDefaultTraceWeight});
        if (m.inside) {
            for (std::size_t i = 0; i < set.size(); ++i) {
                if (m.weights[i] > 0.0) {
                    report.certificate.states.push_back(set.generators()[i]);
                    report.certificate.probabilities.push_back(m.weights[i]);
                }
            }
            report.certificate.reconstruction_error = m.residual;
            report.f_mu = 0.0;
            return report;
        }
        lower = 1;
    } else if (partial_transpose_min_eigenvalue(rho, *model.shape) < -kPptTolerance) {
        lower = 1;
    }

    const auto spec = linalg::hermitian_eig(rho.matrix());
    std::size_t rank = 0;
    while (rank < d && spec.values[rank] > kEigenCutoff) {
        ++rank;
    }
    ComplexMatrix w(d, rank);
    for (std::size_t j = 0; j < rank; ++j) {
        const double s = std::sqrt(spec.values[j]);
        for (std::size_t i = 0; i < d; ++i) {
            w(i, j) = s * spec.vectors(i, j);
        }
    }

    if (model.set != nullptr) {
        // Every decomposition member lies in the range of rho.
        std::vector<std::size_t> all(model.set->size());
        std::iota(all.begin(), all.end(), std::size_t{0});
        for (std::size_t j = 0; j < rank; ++j) {
            if (project_onto(*model.set, all, spec.vectors.column(j)).residual > kSpanTolerance) {
                report.mu_lower = Count::infinity();
                report.mu_upper = Count::infinity();
                report.f_mu = 1.0;
                return report;
            }
        }
    }

    if (rank == 1) {
        auto pure = mu_pure(PureState(spec.vectors.column(0), rho.bipartite()), model, opts.cap);
        pure.r.reset();
        return pure;
    }

    // Eigen-ensemble as the starting certificate.
    Count best = 0;
    for (std::size_t j = 0; j < rank; ++j) {
        best = std::max(best, superposition_rank(PureState(spec.vectors.column(j)), model, opts.cap),
                        [](const Count& a, const Count& b) { return a < b; });
    }
    report.certificate = decomposition_from_columns(rho.matrix(), w, model.shape);

    std::size_t ensemble = opts.ensemble_size;
    if (ensemble == 0) {
        ensemble = std::min<std::size_t>(16, std::max(rank + 1, rank * rank));
    }
    ensemble = std::max(ensemble, rank);
    report.ensemble_size = ensemble;

    const std::size_t lowest_target = lower.is_infinite() ? 1 : lower.value() + 1;
    std::size_t k = best.is_infinite() ? opts.cap : best.value() - 1;
    for (; k >= lowest_target && k >= 1; --k) {
        bool success = false;
        for (std::size_t s = 0; s < opts.restarts && !success; ++s) {
            Rng rng(derive_seed(derive_seed(opts.seed, k), s));
            ComplexMatrix mix = random::isometry(ensemble, rank, rng).adjoint();
            ComplexMatrix x(d, ensemble);
            for (std::size_t it = 0; it < opts.iterations; ++it) {
                const ComplexMatrix psi = w * mix;
                for (std::size_t n = 0; n < ensemble; ++n) {
                    x.set_column(n, truncate(psi.column(n), model, k));
                }
                if (it % 10 == 9 || it + 1 == opts.iterations) {
                    if (reconstruction_error(rho.matrix(), x) <= 0.1 * kCertificateTolerance) {
                        break;
                    }
                }
                const auto polar = linalg::svd(w.adjoint() * x);
                mix = polar.u * polar.v.adjoint();
            }
            auto dec = decomposition_from_columns(rho.matrix(), x, model.shape);
            if (dec.reconstruction_error <= kCertificateTolerance) {
                success = true;
                best = k;
                report.certificate = std::move(dec);
            }
        }
        if (!success) {
            break;
        }
    }

    report.mu_lower = lower;
    report.mu_upper = std::max(minus_one(best), lower, [](const Count& a, const Count& b) { return a < b; });
    report.f_mu = f_map(report.mu_upper);
    return report;
}

bool DistanceComparison::ambiguous() const {
    const bool closer_a = std::find(relation.begin(), relation.end(), -1) != relation.end();
    const bool closer_b = std::find(relation.begin(), relation.end(), 1) != relation.end();
    return closer_a && closer_b;
}

DistanceComparison compare_distances(const DensityMatrix& a, const DensityMatrix& b, const ClassicalSetModel& set,
                                     std::span<const double> ps, double tie_tol) {
    DistanceComparison out;
    for (double p : ps) {
        const double da = distance_measure(a, set, p).value;
        const double db = distance_measure(b, set, p).value;
        out.ps.push_back(p);
        out.distance_a.push_back(da);
        out.distance_b.push_back(db);
        out.relation.push_back(std::abs(da - db) <= tie_tol ? 0 : (da < db ? -1 : 1));
    }
    return out;
}

RealVector project_to_simplex(std::span<const double> v) {
    RealVector sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumulative += sorted[i];
        const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] - t > 0.0) {
            theta = t;
        }
    }
    RealVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = std::max(v[i] - theta, 0.0);
    }
    return out;
}

constexpr double kDistanceTraceWeight = 1e3;

DistanceResult distance_measure(const DensityMatrix& rho, const ClassicalSetModel& set, double p) {
    if (rho.dim() != set.dim()) {
        throw Error(ErrorCode::ShapeMismatch, "state dimension differs from the classical set");
    }
    if (p != 1.0 && p != 2.0 && p != linalg::kInfinity) {
        throw Error(ErrorCode::BadExponent, "distance measure supports p = 1, 2 or infinity");
    }
    // A heavy trace row pins the fit to the simplex; the default weight suits
    // feasibility decisions but leaves the sum a few percent off here.
    auto fit = fit_cone(rho.matrix(), set, kDistanceTraceWeight);
    RealVector q = fit.weights;
    const double total = std::accumulate(q.begin(), q.end(), 0.0);
    if (total > 0.0) {
        for (auto& x : q) {
            x /= total;
        }
    } else {
        std::fill(q.begin(), q.end(), 1.0 / static_cast<double>(q.size()));
    }
    auto value_at = [&](const RealVector& weights) {
        return linalg::schatten_norm(rho.matrix() - set.hull_point(weights).matrix(), p);
    };
    DistanceResult best{value_at(q), q};
    if (p == 2.0) {
        return best;
    }
    for (std::size_t t = 0; t < kSubgradientSteps; ++t) {
        const ComplexMatrix h = rho.matrix() - set.hull_point(q).matrix();
        const auto spec = linalg::hermitian_eig(h);
        // Subgradient of the norm with respect to h, as a Hermitian matrix.
        ComplexMatrix g(set.dim(), set.dim());
        if (p == 1.0) {
            for (std::size_t j = 0; j < spec.values.size(); ++j) {
                const double sign = spec.values[j] > 0.0 ? 1.0 : (spec.values[j] < 0.0 ? -1.0 : 0.0);
                const auto v = spec.vectors.column(j);
                g += outer(v, v) * Complex{sign};
            }
        } else {
            const std::size_t top =
                std::abs(spec.values.front()) >= std::abs(spec.values.back()) ? 0 : spec.values.size() - 1;
            const double sign = spec.values[top] >= 0.0 ? 1.0 : -1.0;
            const auto v = spec.vectors.column(top);
            g = outer(v, v) * Complex{sign};
        }
        RealVector step(q.size());
        const double eta = 0.2 / std::sqrt(static_cast<double>(t + 1));
        for (std::size_t i = 0; i < q.size(); ++i) {
            // d/dq_i ||rho - sum q gamma|| = -tr(gamma_i g)
            Complex tr = 0.0;
            const auto& proj = set.projector(i);
            for (std::size_t a = 0; a < set.dim(); ++a) {
                for (std::size_t b = 0; b < set.dim(); ++b) {
                    tr += proj(a, b) * g(b, a);
                }
            }
            step[i] = q[i] + eta * tr.real();
        }
        q = project_to_simplex(step);
        const double val = value_at(q);
        if (val < best.value) {
            best = {val, q};
        }
    }
    return best;
}

MeasureAxiomReport check_measure_axioms(const std::vector<DensityMatrix>& samples, const ClassicalSetModel& set,
                                        const std::vector<MeasurePair>& pairs, const MuOptions& opts) {
    MeasureAxiomReport report;
    const auto model = MeasureModel::dictionary(set);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const bool inside = membership(samples[i], set, {opts.membership_tol, kDefaultTraceWeight}).inside;
        const auto mu = mu_mixed(samples[i], model, opts);
        const bool zero = mu.mu_upper == Count(0);
        ++report.zero_total;
        if (zero == inside && (mu.mu_lower == Count(0)) == inside) {
            ++report.zero_pass;
        } else {
            report.failures.push_back("sample " + std::to_string(i) + ": mu=[" + mu.mu_lower.to_string() + "," +
                                      mu.mu_upper.to_string() + "] membership=" + (inside ? "inside" : "outside"));
        }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto a = mu_mixed(pairs[i].rho, pairs[i].model, opts);
        const auto b = mu_mixed(pairs[i].rho_prime, pairs[i].model, opts);
        ++report.order_total;
        if (a.mu_upper <= b.mu_lower) {
            ++report.order_pass;
        } else if (b.mu_upper < a.mu_lower) {
            ++report.order_fail;
            report.failures.push_back("pair " + std::to_string(i) + ": mu(rho) lower " + a.mu_lower.to_string() +
                                      " exceeds mu(rho') upper " + b.mu_upper.to_string());
        } else {
            ++report.order_inconclusive;
        }
    }
    return report;
}

} // namespace qorder
