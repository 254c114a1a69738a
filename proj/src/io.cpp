#include "qorder/io.hpp"

#include <fstream>

namespace qorder::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        parse_error(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

std::size_t positive_size(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() <= 0) {
        parse_error(std::string("field '") + key + "' must be a positive integer");
    }
    return v.get<std::size_t>();
}

std::uint64_t nonnegative(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        parse_error(std::string("field '") + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

double number(const json& j) {
    if (!j.is_number()) {
        parse_error("expected a number");
    }
    return j.get<double>();
}

std::optional<BipartiteShape> shape_from(const json& j) {
    if (!j.is_object() || !j.contains("bipartite") || j.at("bipartite").is_null()) {
        return std::nullopt;
    }
    const json& b = j.at("bipartite");
    if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer() || !b[1].is_number_integer() ||
        b[0].get<std::int64_t>() <= 0 || b[1].get<std::int64_t>() <= 0) {
        parse_error("'bipartite' must be [dim_a, dim_b]");
    }
    return BipartiteShape(b[0].get<std::size_t>(), b[1].get<std::size_t>());
}

json shape_to(const std::optional<BipartiteShape>& s) {
    if (!s) {
        return nullptr;
    }
    return json::array({s->dim_a, s->dim_b});
}

ComplexVector vector_from_json(const json& j, std::size_t n) {
    if (!j.is_array() || j.size() != n) {
        parse_error("expected a list of " + std::to_string(n) + " complex entries");
    }
    ComplexVector v;
    v.reserve(n);
    for (const auto& z : j) {
        v.push_back(complex_from_json(z));
    }
    return v;
}

json vector_to_json(std::span<const Complex> v) {
    json out = json::array();
    for (const auto& z : v) {
        out.push_back(to_json(z));
    }
    return out;
}

} // namespace

json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        parse_error("complex numbers are [re, im] pairs");
    }
    return {number(j[0]), number(j[1])};
}

json to_json(const ComplexMatrix& m) { return vector_to_json(m.entries()); }

ComplexMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
    auto entries = vector_from_json(j, rows * cols);
    return ComplexMatrix(rows, cols, std::move(entries));
}

json to_json(const DensityMatrix& rho) {
    json j{{"dim", rho.dim()}, {"matrix", to_json(rho.matrix())}};
    if (rho.bipartite()) {
        j["bipartite"] = shape_to(rho.bipartite());
    }
    return j;
}

json to_json(const PureState& psi) {
    json j{{"dim", psi.dim()}, {"amplitudes", vector_to_json(psi.amplitudes())}};
    if (psi.bipartite()) {
        j["bipartite"] = shape_to(psi.bipartite());
    }
    return j;
}

DensityMatrix density_from_json(const json& j) {
    const std::size_t d = positive_size(j, "dim");
    return DensityMatrix(matrix_from_json(field(j, "matrix"), d, d), shape_from(j));
}

PureState pure_from_json(const json& j) {
    const std::size_t d = positive_size(j, "dim");
    return PureState(vector_from_json(field(j, "amplitudes"), d), shape_from(j));
}

AnyState state_from_json(const json& j) {
    if (j.is_object() && j.contains("amplitudes")) {
        return pure_from_json(j);
    }
    if (j.is_object() && j.contains("matrix")) {
        return density_from_json(j);
    }
    parse_error("state needs 'amplitudes' or 'matrix'");
}

DensityMatrix as_density(const AnyState& s) {
    if (const auto* psi = std::get_if<PureState>(&s)) {
        return from_pure(*psi);
    }
    return std::get<DensityMatrix>(s);
}

json to_json(const ClassicalSetModel& set) {
    json gens = json::array();
    for (const auto& g : set.generators()) {
        gens.push_back(vector_to_json(g.amplitudes()));
    }
    const auto& p = set.parameters();
    json j{{"dim", set.dim()}, {"kind", std::string(to_string(set.kind()))}, {"generators", std::move(gens)}};
    if (set.kind() == SetKind::CoherentGrid) {
        json alphas = json::array();
        for (const auto& a : p.alphas) {
            alphas.push_back(to_json(a));
        }
        j["n_max"] = p.n_max;
        j["alphas"] = std::move(alphas);
    }
    if (set.kind() == SetKind::ProductGrid) {
        j["count"] = p.count;
        j["seed"] = p.seed;
    }
    if (p.shape) {
        j["bipartite"] = shape_to(p.shape);
    }
    return j;
}

ClassicalSetModel set_from_json(const json& j) {
    const std::size_t d = positive_size(j, "dim");
    const SetKind kind = j.contains("kind") ? set_kind_from_string(field(j, "kind").get<std::string>())
                                             : SetKind::Custom;
    const json& gens = field(j, "generators");
    if (!gens.is_array() || gens.empty()) {
        throw Error(ErrorCode::EmptySet, "set file lists no generators");
    }
    const auto shape = shape_from(j);
    std::vector<PureState> states;
    for (const auto& g : gens) {
        states.emplace_back(vector_from_json(g, d), shape);
    }
    GridParameters params;
    params.shape = shape;
    if (j.contains("n_max")) {
        params.n_max = nonnegative(j, "n_max");
    }
    if (j.contains("alphas")) {
        for (const auto& a : j.at("alphas")) {
            params.alphas.push_back(complex_from_json(a));
        }
    }
    if (j.contains("count")) {
        params.count = nonnegative(j, "count");
    }
    if (j.contains("seed")) {
        params.seed = nonnegative(j, "seed");
    }
    return ClassicalSetModel(std::move(states), kind, std::move(params));
}

json to_json(const ClassicalOperation& op) {
    json kraus = json::array();
    for (const auto& a : op.kraus()) {
        kraus.push_back(to_json(a));
    }
    json j{{"dim_in", op.dim_in()}, {"dim_out", op.dim_out()}, {"kraus", std::move(kraus)}, {"label", op.label()}};
    if (op.inverse() != nullptr) {
        j["inverse"] = to_json(*op.inverse());
    }
    return j;
}

ClassicalOperation operation_from_json(const json& j) {
    const std::size_t din = positive_size(j, "dim_in");
    const std::size_t dout = positive_size(j, "dim_out");
    const json& list = field(j, "kraus");
    if (!list.is_array()) {
        parse_error("'kraus' must be a list of matrices");
    }
    std::vector<ComplexMatrix> kraus;
    for (const auto& m : list) {
        kraus.push_back(matrix_from_json(m, dout, din));
    }
    std::shared_ptr<const ClassicalOperation> inverse;
    if (j.contains("inverse") && !j.at("inverse").is_null()) {
        inverse = std::make_shared<ClassicalOperation>(operation_from_json(j.at("inverse")));
    }
    const std::string label = j.contains("label") ? j.at("label").get<std::string>() : std::string{};
    return ClassicalOperation(din, dout, std::move(kraus), label, std::move(inverse));
}

json to_json(const MixtureWitness& w) {
    return {{"lambda", w.lambda}, {"gamma_weights", w.gamma_weights}, {"residual", w.residual}};
}

json to_json(const PreorderDecision& d) {
    json j{{"verdict", std::string(to_string(d.verdict))}, {"min_residual", d.min_residual}};
    if (d.certificate) {
        const auto& c = *d.certificate;
        j["lambda"] = c.witness.lambda;
        j["lambda_max"] = c.lambda_max();
        j["lambda_min"] = c.lambda_min();
        j["gamma_weights"] = c.witness.gamma_weights;
        j["residual"] = c.witness.residual;
        j["lower_witness"] = to_json(c.lowest);
    }
    return j;
}

json to_json(const Count& c) {
    if (c.is_infinite()) {
        return "inf";
    }
    return c.value();
}

json to_json(const MeasureReport& r) {
    json states = json::array();
    for (const auto& s : r.certificate.states) {
        states.push_back(vector_to_json(s.amplitudes()));
    }
    json j{{"mu_lower", to_json(r.mu_lower)},
           {"mu_upper", to_json(r.mu_upper)},
           {"f_mu", r.f_mu},
           {"certificate",
            {{"states", std::move(states)},
             {"probabilities", r.certificate.probabilities},
             {"reconstruction_error", r.certificate.reconstruction_error}}}};
    if (r.r) {
        j["r"] = to_json(*r.r);
    }
    if (r.ensemble_size > 0) {
        j["ensemble_size"] = r.ensemble_size;
    }
    return j;
}

json to_json(const StateDiagnostics& d) {
    return {{"hermiticity_defect", d.hermiticity_defect},
            {"min_eigenvalue", d.min_eigenvalue},
            {"trace", d.trace},
            {"passed", d.passed()}};
}

json read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        parse_error("cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        parse_error("'" + path.string() + "' is not valid JSON: " + e.what());
    }
}

} // namespace qorder::io
