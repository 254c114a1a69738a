#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qorder::verify {

struct CriterionResult {
    std::string id; ///< "AC1" ... "AC9"
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0; ///< time spent in the library, oracles excluded
};

struct SuiteConfig {
    std::uint64_t seed = 2024;
    double epsilon = 0.5;
    std::size_t grid = 101;
    /// Called as each criterion finishes.
    std::function<void(const CriterionResult&)> on_result;
};

CriterionResult ac1_toy_distances(const SuiteConfig& cfg);
CriterionResult ac2_transformed_ordering(const SuiteConfig& cfg);
CriterionResult ac3_preorder_axioms(const SuiteConfig& cfg);
CriterionResult ac4_classical_minimality(const SuiteConfig& cfg);
CriterionResult ac5_operation_monotonicity(const SuiteConfig& cfg);
CriterionResult ac6_measure_values(const SuiteConfig& cfg);
CriterionResult ac7_measure_axioms(const SuiteConfig& cfg);
CriterionResult ac8_rank_monotonicity(const SuiteConfig& cfg);
CriterionResult ac9_solver_oracle(const SuiteConfig& cfg);

/// toy, ordering, operations, measures, solver.
const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown suite name. An exception inside a
/// criterion is reported as a failed result.
std::vector<CriterionResult> run_suite(const std::string& name, const SuiteConfig& cfg);

std::vector<CriterionResult> run_all(const SuiteConfig& cfg);

} // namespace qorder::verify
