#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qorder/classical_set.hpp"

namespace qorder::cli {

/// Settings shared by all subcommands. Precedence: defaults, then the
/// config file, then command-line flags.
struct RunConfig {
    double membership_tol = kDefaultMembershipTolerance;
    double preorder_tol = kDefaultMembershipTolerance;
    std::size_t grid = 101;
    std::uint64_t seed = 2024;
    std::size_t ensemble_size = 0;
    std::size_t restarts = 8;
    std::size_t iterations = 1500;
    std::string format = "json";

    /// Throws InvalidArgument for non-positive tolerances, grid < 3 or an unknown format.
    void validate() const;
};

/// Overlays the keys present in `j` onto `base`. Unknown keys throw ParseError.
RunConfig apply_config(const nlohmann::json& j, RunConfig base);

inline constexpr const char* kConfigEnv = "QORDER_CONFIG";

/// Entry point behind the qorder binary. Returns 0 on success, 1 when a
/// verdict or check fails and 2 on malformed input or usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qorder::cli
