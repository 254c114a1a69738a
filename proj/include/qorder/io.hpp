#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "qorder/classical_ops.hpp"
#include "qorder/classical_set.hpp"
#include "qorder/measures.hpp"
#include "qorder/ordering.hpp"
#include "qorder/states.hpp"

/// JSON encodings. Complex numbers are [re, im] pairs and matrices are
/// row-major lists of them. Malformed documents throw ParseError.
namespace qorder::io {

using json = nlohmann::json;

json to_json(Complex z);
Complex complex_from_json(const json& j);

json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols);

/// {"dim", "matrix", optional "bipartite": [da, db]}
json to_json(const DensityMatrix& rho);
/// {"dim", "amplitudes", optional "bipartite"}
json to_json(const PureState& psi);

DensityMatrix density_from_json(const json& j);
PureState pure_from_json(const json& j);

/// A state file holds either amplitudes or a matrix.
using AnyState = std::variant<PureState, DensityMatrix>;
AnyState state_from_json(const json& j);
DensityMatrix as_density(const AnyState& s);

/// {"dim", "kind", "generators": [[amplitudes]...], plus construction parameters}
json to_json(const ClassicalSetModel& set);
ClassicalSetModel set_from_json(const json& j);

/// {"dim_in", "dim_out", "kraus": [matrix...], "label", optional "inverse"}
json to_json(const ClassicalOperation& op);
ClassicalOperation operation_from_json(const json& j);

json to_json(const MixtureWitness& w);
json to_json(const PreorderDecision& d);
json to_json(const Count& c);
json to_json(const MeasureReport& r);
json to_json(const StateDiagnostics& d);

json read_file(const std::filesystem::path& path);

} // namespace qorder::io
