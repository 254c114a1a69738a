#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qorder/classical_ops.hpp"
#include "qorder/error.hpp"
#include "qorder/io.hpp"
#include "qorder/linalg.hpp"
#include "qorder/measures.hpp"
#include "qorder/ordering.hpp"
#include "qorder/toy.hpp"
#include "suites.hpp"

namespace qorder::cli {

using io::json;

namespace {

constexpr double kToyTolerance = 1e-9;

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); }

double positive_number(const json& j, const char* key) {
    if (!j.is_number() || !(j.get<double>() > 0.0)) {
        throw Error(ErrorCode::ParseError, std::string("config '") + key + "' must be a positive number");
    }
    return j.get<double>();
}

std::uint64_t count_value(const json& j, const char* key) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        throw Error(ErrorCode::ParseError, std::string("config '") + key + "' must be a nonnegative integer");
    }
    return j.get<std::uint64_t>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known, const std::string& where) {
    if (!j.is_object()) {
        throw Error(ErrorCode::ParseError, "config " + where + " must be an object");
    }
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) {
            ok = ok || key == k;
        }
        if (!ok) {
            throw Error(ErrorCode::ParseError, "unknown config key '" + key + "' in " + where);
        }
    }
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string csv_number(double x) {
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return q + "\"";
}

std::string relation_symbol(double a, double b) {
    if (std::abs(a - b) <= kToyTolerance) {
        return "=";
    }
    return a < b ? "<" : ">";
}

DensityMatrix load_density(const std::string& path) { return io::as_density(io::state_from_json(io::read_file(path))); }

BipartiteShape parse_shape(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        usage("bipartite shape must be written da,db");
    }
    try {
        std::size_t used_a = 0;
        std::size_t used_b = 0;
        const std::string a = text.substr(0, comma);
        const std::string b = text.substr(comma + 1);
        const long da = std::stol(a, &used_a);
        const long db = std::stol(b, &used_b);
        if (used_a != a.size() || used_b != b.size() || da <= 0 || db <= 0) {
            usage("bipartite shape must be two positive integers");
        }
        return {static_cast<std::size_t>(da), static_cast<std::size_t>(db)};
    } catch (const std::logic_error&) {
        usage("bipartite shape must be two positive integers");
    }
}

Complex parse_complex(const std::string& text) {
    try {
        const auto colon = text.find(':');
        std::size_t used = 0;
        const std::string re = text.substr(0, colon);
        const double x = std::stod(re, &used);
        if (used != re.size()) {
            usage("bad complex number '" + text + "'");
        }
        if (colon == std::string::npos) {
            return {x, 0.0};
        }
        const std::string im = text.substr(colon + 1);
        const double y = std::stod(im, &used);
        if (used != im.size()) {
            usage("bad complex number '" + text + "'");
        }
        return {x, y};
    } catch (const std::logic_error&) {
        usage("bad complex number '" + text + "'");
    }
}

void require_json_format(const RunConfig& cfg, const char* command) {
    if (cfg.format != "json") {
        usage(std::string(command) + " only writes JSON");
    }
}

// Subcommands ---------------------------------------------------------------

int cmd_toy(const RunConfig& cfg, double epsilon, std::ostream& out) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        usage("--epsilon must lie in (0, 1)");
    }
    const toy::Disk disk;
    const double inf = linalg::kInfinity;
    bool passed = true;

    struct DistanceRow {
        std::string norm;
        double p;
        double first;
        double second;
        const char* expected;
    };
    const std::vector<DistanceRow> dist_rows{{"2", 2.0, 0.5, 0.5, "="},
                                             {"1", 1.0, 0.5, 1.0 / std::sqrt(2.0), "<"},
                                             {"inf", inf, 0.5, 1.0 / (2.0 * std::sqrt(2.0)), ">"}};
    json distances = json::array();
    std::vector<std::vector<std::string>> csv;
    for (const auto& row : dist_rows) {
        const double a = toy::disk_distance(toy::point_y1(), disk, row.p).distance;
        const double b = toy::disk_distance(toy::point_y2(), disk, row.p).distance;
        const std::string rel = relation_symbol(a, b);
        const bool ok = rel == row.expected && std::abs(a - row.first) <= kToyTolerance &&
                        std::abs(b - row.second) <= kToyTolerance;
        passed = passed && ok;
        distances.push_back({{"norm", row.norm},
                             {"d_y1", a},
                             {"d_y2", b},
                             {"relation", rel},
                             {"expected", row.expected},
                             {"ok", ok}});
        csv.push_back({"distance", "p=" + row.norm, csv_number(a), csv_number(b), rel, row.expected, ok ? "1" : "0"});
    }

    const auto maps = toy::scaling_maps(epsilon);
    const double expect[3][2] = {{0.5, epsilon / 2}, {0.5, 0.5}, {epsilon / 2, 0.5}};
    const char* pattern[3] = {">", "=", "<"};
    json transformed = json::array();
    for (int i = 0; i < 3; ++i) {
        const double a = toy::disk_distance_transformed(toy::point_y1(), disk, maps[i]).distance;
        const double b = toy::disk_distance_transformed(toy::point_y3(epsilon), disk, maps[i]).distance;
        const std::string rel = relation_symbol(a, b);
        const bool ok = rel == pattern[i] && std::abs(a - expect[i][0]) <= kToyTolerance &&
                        std::abs(b - expect[i][1]) <= kToyTolerance;
        passed = passed && ok;
        const std::string name = "Lambda" + std::to_string(i + 1);
        transformed.push_back({{"map", name},
                               {"d_y1", a},
                               {"d_y3", b},
                               {"expected_d_y1", expect[i][0]},
                               {"expected_d_y3", expect[i][1]},
                               {"relation", rel},
                               {"expected", pattern[i]},
                               {"ok", ok}});
        csv.push_back({"transformed", name, csv_number(a), csv_number(b), rel, pattern[i], ok ? "1" : "0"});
    }

    if (cfg.format == "csv") {
        out << "table,norm,first,second,relation,expected,ok\n";
        for (const auto& row : csv) {
            for (std::size_t k = 0; k < row.size(); ++k) {
                out << (k ? "," : "") << row[k];
            }
            out << '\n';
        }
    } else {
        emit(out, {{"epsilon", epsilon}, {"distances", distances}, {"transformed", transformed}, {"passed", passed}});
    }
    return passed ? 0 : 1;
}

int cmd_order(const RunConfig& cfg, const std::string& rho_path, const std::string& rho_prime_path,
              const std::string& set_path, std::ostream& out) {
    require_json_format(cfg, "order-check");
    const auto set = io::set_from_json(io::read_file(set_path));
    const auto rho = normalize(load_density(rho_path));
    const auto rho_prime = normalize(load_density(rho_prime_path));
    PreorderOptions opts;
    opts.tol = cfg.preorder_tol;
    opts.grid = cfg.grid;
    const auto decision = decide_preorder(rho, rho_prime, set, opts);
    emit(out, io::to_json(decision));
    return decision.verdict == Verdict::Certified ? 0 : 1;
}

int cmd_measure(const RunConfig& cfg, const std::string& state_path, const std::string& set_path,
                const std::string& bipartite, std::size_t cap, std::ostream& out) {
    require_json_format(cfg, "measure");
    const auto state = io::state_from_json(io::read_file(state_path));
    std::optional<ClassicalSetModel> set;
    if (!set_path.empty()) {
        set.emplace(io::set_from_json(io::read_file(set_path)));
    }
    std::optional<BipartiteShape> shape;
    if (!bipartite.empty()) {
        shape = parse_shape(bipartite);
    } else if (!set) {
        shape = std::visit([](const auto& s) { return s.bipartite(); }, state);
    }
    MeasureModel model;
    std::string mode;
    if (shape) {
        model = MeasureModel::bipartite(*shape);
        mode = "bipartite";
    } else if (set) {
        model = MeasureModel::dictionary(*set);
        mode = "dictionary";
    } else {
        usage("measure needs --set, --bipartite or a state with a bipartite shape");
    }

    MeasureReport report;
    if (const auto* psi = std::get_if<PureState>(&state)) {
        report = mu_pure(psi->normalized(), model, cap);
    } else {
        MuOptions opts;
        opts.seed = cfg.seed;
        opts.ensemble_size = cfg.ensemble_size;
        opts.restarts = cfg.restarts;
        opts.iterations = cfg.iterations;
        opts.cap = cap;
        opts.membership_tol = cfg.membership_tol;
        report = mu_mixed(normalize(std::get<DensityMatrix>(state)), model, opts);
    }
    json j = io::to_json(report);
    j["mode"] = mode;
    emit(out, j);
    return 0;
}

int cmd_setgen(const RunConfig& cfg, const std::string& kind, std::size_t n_max, const std::vector<std::string>& alphas,
               const std::string& dims, std::size_t count, const std::vector<std::string>& states, std::ostream& out) {
    require_json_format(cfg, "set-gen");
    const SetKind k = set_kind_from_string(kind);
    std::optional<ClassicalSetModel> set;
    switch (k) {
    case SetKind::CoherentGrid: {
        if (alphas.empty() || n_max == 0) {
            usage("coherent-grid needs --n-max and at least one --alpha");
        }
        std::vector<Complex> values;
        for (const auto& a : alphas) {
            values.push_back(parse_complex(a));
        }
        set.emplace(coherent_grid(n_max, values));
        break;
    }
    case SetKind::ProductGrid:
        if (dims.empty() || count == 0) {
            usage("product-grid needs --dims and --count");
        }
        set.emplace(product_grid(parse_shape(dims), count, cfg.seed));
        break;
    case SetKind::Custom: {
        if (states.empty()) {
            usage("custom needs at least one --state");
        }
        std::vector<PureState> gens;
        for (const auto& path : states) {
            gens.push_back(io::pure_from_json(io::read_file(path)));
        }
        set.emplace(custom_set(std::move(gens)));
        break;
    }
    }
    emit(out, io::to_json(*set));
    return 0;
}

int cmd_kraus_apply(const RunConfig& cfg, const std::string& op_path, const std::string& state_path, bool renormalize,
                    std::ostream& out) {
    require_json_format(cfg, "kraus-apply");
    const auto op = io::operation_from_json(io::read_file(op_path));
    auto image = apply(op, load_density(state_path));
    if (renormalize) {
        image = normalize(image);
    }
    emit(out, io::to_json(image));
    return 0;
}

json classicality_json(const ClassicalityReport& r) {
    return {{"verdict", r.classical ? "CLASSICAL" : "NOT-CLASSICAL"}, {"residuals", r.residuals}, {"failing", r.failing}};
}

int cmd_opcheck(const RunConfig& cfg, const std::string& op_path, const std::string& set_path,
                const std::string& rho_path, std::ostream& out) {
    require_json_format(cfg, "op-check");
    const auto op = io::operation_from_json(io::read_file(op_path));
    const auto set = io::set_from_json(io::read_file(set_path));
    const auto report = check_classical(op, set, cfg.membership_tol);
    json j = classicality_json(report);
    j["label"] = op.label();
    if (op.inverse() != nullptr && op.dim_in() == set.dim() && op.dim_out() == set.dim()) {
        const auto inv = check_invertible(op, set, cfg.membership_tol);
        j["inverse"] = classicality_json(inv.backward);
        j["invertible_classical"] = inv.certified();
    }
    if (!rho_path.empty()) {
        PreorderOptions opts;
        opts.tol = cfg.preorder_tol;
        opts.grid = cfg.grid;
        const auto rho = normalize(load_density(rho_path));
        const auto order = check_operation_order(op, rho, set, opts);
        json o{{"image_below_input", order.certified()}};
        if (order.mixture) {
            o["mixture_lambda_max"] = order.mixture->lambda_max();
        } else {
            o["mixture_lambda_max"] = nullptr;
        }
        j["order"] = o;
    }
    emit(out, j);
    return report.classical ? 0 : 1;
}

int cmd_suite(const RunConfig& cfg, const std::vector<std::string>& names, std::ostream& out) {
    if (cfg.format != "json" && cfg.format != "csv") {
        usage("unknown format");
    }
    for (const auto& n : names) {
        const auto& known = verify::suite_names();
        if (std::find(known.begin(), known.end(), n) == known.end()) {
            usage("unknown suite '" + n + "'");
        }
    }
    verify::SuiteConfig sc;
    sc.seed = cfg.seed;
    sc.grid = cfg.grid;
    std::vector<verify::CriterionResult> results;
    for (const auto& n : names.empty() ? verify::suite_names() : names) {
        for (auto& r : verify::run_suite(n, sc)) {
            results.push_back(std::move(r));
        }
    }
    bool passed = true;
    for (const auto& r : results) {
        passed = passed && r.passed;
    }
    if (cfg.format == "csv") {
        out << "id,passed,title,detail\n";
        for (const auto& r : results) {
            out << r.id << ',' << (r.passed ? 1 : 0) << ',' << csv_field(r.title) << ',' << csv_field(r.detail) << '\n';
        }
    } else {
        json arr = json::array();
        for (const auto& r : results) {
            arr.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}});
        }
        emit(out, {{"seed", cfg.seed}, {"results", arr}, {"passed", passed}});
    }
    return passed ? 0 : 1;
}

} // namespace

void RunConfig::validate() const {
    if (!(membership_tol > 0.0) || !(preorder_tol > 0.0)) {
        usage("tolerances must be positive");
    }
    if (grid < 3) {
        usage("grid size must be at least 3");
    }
    if (format != "json" && format != "csv") {
        usage("format must be json or csv");
    }
}

RunConfig apply_config(const json& j, RunConfig base) {
    reject_unknown(j, {"tolerances", "grid", "seed", "ensemble", "format"}, "file");
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        reject_unknown(t, {"membership", "preorder"}, "'tolerances'");
        if (t.contains("membership")) {
            base.membership_tol = positive_number(t.at("membership"), "membership");
        }
        if (t.contains("preorder")) {
            base.preorder_tol = positive_number(t.at("preorder"), "preorder");
        }
    }
    if (j.contains("grid")) {
        base.grid = count_value(j.at("grid"), "grid");
    }
    if (j.contains("seed")) {
        base.seed = count_value(j.at("seed"), "seed");
    }
    if (j.contains("ensemble")) {
        const auto& e = j.at("ensemble");
        reject_unknown(e, {"size", "restarts", "iterations"}, "'ensemble'");
        if (e.contains("size")) {
            base.ensemble_size = count_value(e.at("size"), "size");
        }
        if (e.contains("restarts")) {
            base.restarts = count_value(e.at("restarts"), "restarts");
        }
        if (e.contains("iterations")) {
            base.iterations = count_value(e.at("iterations"), "iterations");
        }
    }
    if (j.contains("format")) {
        if (!j.at("format").is_string()) {
            throw Error(ErrorCode::ParseError, "config 'format' must be a string");
        }
        base.format = j.at("format").get<std::string>();
    }
    return base;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Nonclassicality ordering and measures toolkit", "qorder"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<double> tol;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid;
    std::optional<std::string> format;
    app.add_option("--config", config_path, "JSON config file (default: $QORDER_CONFIG)");
    app.add_option("--tol", tol, "membership and preorder tolerance");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--grid", grid, "lambda grid size (>= 3)");
    app.add_option("--format", format, "json or csv");

    double epsilon = 0.5;
    auto* toy_cmd = app.add_subcommand("toy", "distance tables for the disk example");
    toy_cmd->add_option("--epsilon", epsilon, "scaling parameter in (0, 1)");

    std::string rho_path;
    std::string rho_prime_path;
    std::string set_path;
    auto* order_cmd = app.add_subcommand("order-check", "decide rho <= rho' in a hull model");
    order_cmd->add_option("--rho", rho_path)->required();
    order_cmd->add_option("--rho-prime", rho_prime_path)->required();
    order_cmd->add_option("--set", set_path)->required();

    std::string state_path;
    std::string bipartite;
    std::size_t cap = kMaxDictionaryCap;
    auto* measure_cmd = app.add_subcommand("measure", "superposition rank and convex-roof bounds");
    measure_cmd->add_option("--state", state_path)->required();
    measure_cmd->add_option("--set", set_path);
    measure_cmd->add_option("--bipartite", bipartite, "da,db");
    measure_cmd->add_option("--cap", cap, "largest dictionary subset searched (<= 12)");

    std::string kind;
    std::size_t n_max = 0;
    std::vector<std::string> alphas;
    std::string dims;
    std::size_t count = 0;
    std::vector<std::string> gen_states;
    auto* setgen_cmd = app.add_subcommand("set-gen", "write a classical set model");
    setgen_cmd->add_option("--kind", kind, "coherent-grid, product-grid or custom")->required();
    setgen_cmd->add_option("--n-max", n_max);
    setgen_cmd->add_option("--alpha", alphas, "amplitude RE or RE:IM, repeatable");
    setgen_cmd->add_option("--dims", dims, "da,db");
    setgen_cmd->add_option("--count", count);
    setgen_cmd->add_option("--state", gen_states, "pure state file, repeatable");

    std::string op_path;
    bool renormalize = false;
    auto* apply_cmd = app.add_subcommand("kraus-apply", "apply an operation to a state");
    apply_cmd->add_option("--op", op_path)->required();
    apply_cmd->add_option("--state", state_path)->required();
    apply_cmd->add_flag("--normalize", renormalize, "rescale the image to unit trace");

    auto* opcheck_cmd = app.add_subcommand("op-check", "check that an operation maps the set into itself");
    opcheck_cmd->add_option("--op", op_path)->required();
    opcheck_cmd->add_option("--set", set_path)->required();
    opcheck_cmd->add_option("--rho", rho_path, "also certify op(rho) <= rho");

    std::vector<std::string> suites;
    auto* suite_cmd = app.add_subcommand("suite", "run the acceptance property suites");
    suite_cmd->add_option("--suite", suites, "toy, ordering, operations, measures or solver; repeatable");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        RunConfig cfg;
        if (config_path.empty()) {
            if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') {
                config_path = env;
            }
        }
        if (!config_path.empty()) {
            cfg = apply_config(io::read_file(config_path), cfg);
        }
        if (tol) {
            cfg.membership_tol = *tol;
            cfg.preorder_tol = *tol;
        }
        if (seed) {
            cfg.seed = *seed;
        }
        if (grid) {
            cfg.grid = *grid;
        }
        if (format) {
            cfg.format = *format;
        }
        cfg.validate();

        if (*toy_cmd) {
            return cmd_toy(cfg, epsilon, out);
        }
        if (*order_cmd) {
            return cmd_order(cfg, rho_path, rho_prime_path, set_path, out);
        }
        if (*measure_cmd) {
            return cmd_measure(cfg, state_path, set_path, bipartite, cap, out);
        }
        if (*setgen_cmd) {
            return cmd_setgen(cfg, kind, n_max, alphas, dims, count, gen_states, out);
        }
        if (*apply_cmd) {
            return cmd_kraus_apply(cfg, op_path, state_path, renormalize, out);
        }
        if (*opcheck_cmd) {
            return cmd_opcheck(cfg, op_path, set_path, rho_path, out);
        }
        return cmd_suite(cfg, suites, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        err << "error: malformed JSON: " << e.what() << '\n';
        return 2;
    }
}

} // namespace qorder::cli
