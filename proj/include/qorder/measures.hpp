#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qorder/classical_set.hpp"
#include "qorder/states.hpp"

namespace qorder {

/// Nonnegative integer or infinity. Infinity is a state of its own, never a large number.
class Count {
  public:
    Count() = default;
    Count(std::size_t n) : value_(n) {} // NOLINT(google-explicit-constructor)
    static Count infinity() { return Count(std::nullopt); }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    /// Throws InvalidArgument on infinity.
    std::size_t value() const;
    std::string to_string() const;

    friend bool operator==(const Count&, const Count&) = default;
    friend bool operator<(const Count& a, const Count& b) {
        if (a.is_infinite()) {
            return false;
        }
        return b.is_infinite() || *a.value_ < *b.value_;
    }
    friend bool operator<=(const Count& a, const Count& b) { return !(b < a); }

  private:
    explicit Count(std::optional<std::size_t> v) : value_(v) {}
    std::optional<std::size_t> value_;
};

/// (2/pi) arctan(mu); infinity maps to 1.
double f_map(Count mu);

/// What "classical pure state" means for a rank computation.
///
/// With a bipartite shape the rank is the Schmidt rank (all product vectors
/// are classical). With a set the rank is counted over its generators.
/// Mixed-state lower bounds use hull membership when a set is present and a
/// partial-transpose test otherwise.
struct MeasureModel {
    const ClassicalSetModel* set = nullptr;
    std::optional<BipartiteShape> shape;

    static MeasureModel dictionary(const ClassicalSetModel& s) { return {&s, std::nullopt}; }
    static MeasureModel bipartite(BipartiteShape sh) { return {nullptr, sh}; }
    std::size_t dim() const;
};

inline constexpr std::size_t kMaxDictionaryCap = 12;
inline constexpr double kSchmidtTolerance = 1e-9;
inline constexpr double kSpanTolerance = 1e-8;

/// Smallest number of classical pure states whose superposition is psi.
/// Dictionary mode returns infinity when no subset of at most `cap`
/// generators spans psi; cap above 12 throws InvalidArgument.
Count superposition_rank(const PureState& psi, const MeasureModel& model, std::size_t cap = kMaxDictionaryCap);

struct Decomposition {
    std::vector<PureState> states; ///< normalized
    std::vector<double> probabilities;
    double reconstruction_error = 0.0; ///< ||rho - sum p_i |psi_i><psi_i|||_F
};

struct MeasureReport {
    std::optional<Count> r; ///< pure inputs only
    Count mu_lower = 0;
    Count mu_upper = 0;
    double f_mu = 0.0; ///< f_map(mu_upper)
    Decomposition certificate;
    std::size_t ensemble_size = 0; ///< search cap on decomposition length (mixed inputs)
};

MeasureReport mu_pure(const PureState& psi, const MeasureModel& model, std::size_t cap = kMaxDictionaryCap);

struct MuOptions {
    std::uint64_t seed = 0;
    std::size_t ensemble_size = 0; ///< 0 chooses min(16, max(rank + 1, rank^2))
    std::size_t restarts = 8;
    std::size_t iterations = 1500;
    std::size_t cap = kMaxDictionaryCap;
    double membership_tol = kDefaultMembershipTolerance;
};

/// Bounds on the convex-roof measure of a normalized state. The upper bound
/// comes with a decomposition reconstructing rho within 1e-8.
MeasureReport mu_mixed(const DensityMatrix& rho, const MeasureModel& model, const MuOptions& opts = {});

/// Smallest eigenvalue of the partial transpose over the second factor.
double partial_transpose_min_eigenvalue(const DensityMatrix& rho, BipartiteShape shape);

struct DistanceResult {
    double value = 0.0;
    RealVector weights; ///< closest hull point, on the simplex
};

/// min over hull points gamma of the Schatten p-norm of rho - gamma for p in {1, 2, inf}.
/// p = 2 uses the nonnegative fit with the trace pinned by a heavy extra row;
/// p = 1 and inf refine it by 200 projected subgradient steps.
DistanceResult distance_measure(const DensityMatrix& rho, const ClassicalSetModel& set, double p);

/// Distances of two states from the hull under several Schatten exponents.
/// relation[k] is -1 when a is strictly closer under ps[k], +1 when b is, 0 within tie_tol.
struct DistanceComparison {
    std::vector<double> ps;
    std::vector<double> distance_a;
    std::vector<double> distance_b;
    std::vector<int> relation;
    /// Two exponents order the pair in opposite strict directions.
    bool ambiguous() const;
};

DistanceComparison compare_distances(const DensityMatrix& a, const DensityMatrix& b, const ClassicalSetModel& set,
                                     std::span<const double> ps, double tie_tol = 1e-9);

/// Euclidean projection onto the probability simplex.
RealVector project_to_simplex(std::span<const double> v);

struct MeasurePair {
    DensityMatrix rho;       ///< the lower state, rho <= rho_prime by construction
    DensityMatrix rho_prime;
    MeasureModel model;
};

struct MeasureAxiomReport {
    std::size_t zero_pass = 0;  ///< axiom (i): mu = 0 exactly when membership holds
    std::size_t zero_total = 0;
    std::size_t order_pass = 0; ///< axiom (ii), conclusive and satisfied
    std::size_t order_fail = 0; ///< conclusive and violated
    std::size_t order_inconclusive = 0;
    std::size_t order_total = 0;
    std::vector<std::string> failures;
};

/// Axiom (i) on `samples` against a dictionary model and axiom (ii) on pairs.
/// A pair passes when mu_upper(rho) <= mu_lower(rho'), fails when
/// mu_lower(rho) > mu_upper(rho'), and is inconclusive otherwise.
MeasureAxiomReport check_measure_axioms(const std::vector<DensityMatrix>& samples, const ClassicalSetModel& set,
                                        const std::vector<MeasurePair>& pairs, const MuOptions& opts = {});

} // namespace qorder
