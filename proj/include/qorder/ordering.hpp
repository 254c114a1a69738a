#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qorder/classical_set.hpp"
#include "qorder/random.hpp"
#include "qorder/states.hpp"

namespace qorder {

/// rho - lambda rho' = sum_i w_i gamma_i with w >= 0, up to `residual`.
/// The weights sum to 1 - lambda for normalized inputs.
struct MixtureWitness {
    double lambda = 0.0;
    RealVector gamma_weights;
    double residual = 0.0;
};

/// Evidence that rho = lambda rho' + (1 - lambda) gamma for a classical gamma.
/// The feasible lambda values form an interval [lambda_min, lambda_max].
struct PreorderCertificate {
    MixtureWitness witness; ///< at lambda_max
    MixtureWitness lowest;  ///< at lambda_min

    double lambda_max() const noexcept { return witness.lambda; }
    double lambda_min() const noexcept { return lowest.lambda; }
};

enum class Verdict { Certified, InfeasibleInModel };

std::string_view to_string(Verdict v) noexcept;

struct PreorderOptions {
    double tol = kDefaultMembershipTolerance; ///< Frobenius residual accepted as feasible
    std::size_t grid = 101;                   ///< lambda grid used to bracket the endpoints
    double bisect_tol = 1e-9;                 ///< endpoint resolution
    double trace_weight = kDefaultTraceWeight;
    double normalization_tol = 1e-8;
};

struct PreorderDecision {
    Verdict verdict = Verdict::InfeasibleInModel;
    std::optional<PreorderCertificate> certificate;
    /// Smallest residual over all lambda (joint fit); positive when infeasible.
    double min_residual = 0.0;
};

/// Feasibility of the mixture relation at one fixed lambda.
MixtureWitness mixture_feasibility(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                                   const ClassicalSetModel& set, double lambda, const PreorderOptions& opts = {});

/// Decides rho <= rho' relative to the hull model.
///
/// A single nonnegative fit with lambda as an extra unknown decides whether
/// any lambda in [0, 1] is feasible. Both interval endpoints are then
/// bracketed on the lambda grid and bisected to `bisect_tol`.
/// Both states must be normalized (NotNormalized otherwise).
PreorderDecision decide_preorder(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                                 const ClassicalSetModel& set, const PreorderOptions& opts = {});

std::optional<PreorderCertificate> preorder_leq(const DensityMatrix& rho, const DensityMatrix& rho_prime,
                                                const ClassicalSetModel& set, const PreorderOptions& opts = {});

/// rho <= rho' and rho' <= rho.
bool equivalent(const DensityMatrix& rho, const DensityMatrix& rho_prime, const ClassicalSetModel& set,
                const PreorderOptions& opts = {});

/// Random classical state: Dirichlet-weighted mixture of the generator projectors.
DensityMatrix random_classical_state(const ClassicalSetModel& set, Rng& rng);

struct OrderAxiomSpec {
    std::size_t instances = 100;
    /// Every n-th transitivity instance uses lambda = 1 or kappa = 1.
    std::size_t edge_case_period = 10;
    double margin = 1e-6;
    PreorderOptions preorder;
};

struct OrderAxiomReport {
    std::size_t reflexive_pass = 0;
    std::size_t transitive_pass = 0;
    std::size_t edge_case_pass = 0;
    std::size_t edge_cases = 0;
    std::size_t equivalence_pass = 0; ///< classical pairs found equivalent, symmetric verdicts
    std::size_t instances = 0;
    double worst_transitivity_margin = INFINITY; ///< min over instances of lambda_max - lambda*kappa
    std::vector<std::string> failures;

    bool all_passed() const noexcept {
        return failures.empty() && reflexive_pass == instances && transitive_pass == instances &&
               equivalence_pass == instances;
    }
};

/// Seeded check of reflexivity, transitivity (via rho1 = lambda rho2 + (1-lambda) gamma1,
/// rho2 = kappa rho3 + (1-kappa) gamma2 and the explicit lambda*kappa witness), and
/// equivalence of classical pairs.
OrderAxiomReport check_order_axioms(const ClassicalSetModel& set, std::uint64_t seed, const OrderAxiomSpec& spec = {});

} // namespace qorder
