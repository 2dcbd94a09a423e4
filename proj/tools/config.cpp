#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace fenchel::cli {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

void allow_keys(const json& obj, std::initializer_list<std::string_view> keys, const char* where) {
    if (!obj.is_object()) parse_error(std::string(where) + " must be an object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (auto k : keys) known = known || item.key() == k;
        if (!known) parse_error(std::string(where) + ": unknown key '" + item.key() + "'");
    }
}

double parse_finite(const json& v, const char* what) {
    if (!v.is_number()) parse_error(std::string(what) + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) parse_error(std::string(what) + " must be finite");
    return x;
}

std::size_t parse_count(const json& v, const char* what) {
    if (!v.is_number_integer() || v.get<long long>() < 0) parse_error(std::string(what) + " must be a non-negative integer");
    return v.get<std::size_t>();
}

std::vector<double> parse_number_list(const json& v, const char* what) {
    if (!v.is_array()) parse_error(std::string(what) + " must be an array");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(parse_finite(x, what));
    return out;
}

std::vector<double> parse_grid_spec(const json& g, const char* what) {
    if (g.is_array()) return parse_number_list(g, what);
    allow_keys(g, {"lo", "hi", "step", "count"}, what);
    if (!g.contains("lo") || !g.contains("hi")) parse_error(std::string(what) + " needs lo and hi");
    const double lo = parse_finite(g["lo"], what);
    const double hi = parse_finite(g["hi"], what);
    if (g.contains("step") == g.contains("count")) parse_error(std::string(what) + " needs exactly one of step and count");
    const Grid1D grid = g.contains("step") ? Grid1D::with_step(lo, hi, parse_finite(g["step"], what))
                                           : Grid1D::uniform(lo, hi, parse_count(g["count"], what));
    return {grid.points().begin(), grid.points().end()};
}

LogKind parse_log_kind(const json& v) {
    if (!v.is_string()) parse_error("log_family.kind must be a string");
    const auto s = v.get<std::string>();
    for (auto k : {LogKind::F1, LogKind::F2, LogKind::F2Reflected, LogKind::F3, LogKind::F3Reflected, LogKind::F4}) {
        if (s == to_string(k)) return k;
    }
    parse_error("unknown log_family.kind '" + s + "'");
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) parse_error("cannot open '" + path.string() + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        parse_error("'" + path.string() + "': " + e.what());
    }
}

TransformParams parse_params(const json& p) {
    allow_keys(p, {"E", "c", "w", "tau", "beta"}, "params");
    if (!p.contains("E")) parse_error("params.E is required");
    Matrix E = parse_matrix(p["E"], "params.E");
    const std::size_t n = E.size();
    Vector c = p.contains("c") ? parse_vector(p["c"], n, "params.c") : Vector::zeros(n);
    Vector w = p.contains("w") ? parse_vector(p["w"], n, "params.w") : Vector::zeros(n);
    const double tau = p.contains("tau") ? parse_finite(p["tau"], "params.tau") : 1.0;
    const double beta = p.contains("beta") ? parse_finite(p["beta"], "params.beta") : 0.0;
    return {std::move(E), std::move(c), std::move(w), tau, beta};
}

QuadraticFn parse_quadratic(const json& q, const Tolerances& tol) {
    allow_keys(q, {"A", "b", "gamma"}, "candidate.quadratic");
    if (!q.contains("A")) parse_error("candidate.quadratic.A is required");
    const Matrix A = parse_matrix(q["A"], "candidate.quadratic.A");
    Vector b = q.contains("b") ? parse_vector(q["b"], A.size(), "candidate.quadratic.b") : Vector::zeros(A.size());
    const double gamma = q.contains("gamma") ? parse_finite(q["gamma"], "candidate.quadratic.gamma") : 0.0;
    return {SymMatrix(A, tol), std::move(b), gamma};
}

void parse_tolerances(const json& t, Tolerances& tol) {
    allow_keys(t, {"sym", "sing", "pd", "psd", "cons", "param"}, "options.tolerances");
    auto set = [&](const char* key, double& field) {
        if (!t.contains(key)) return;
        field = parse_finite(t[key], "options.tolerances");
        if (!(field >= 0.0)) parse_error("tolerances must be non-negative");
    };
    set("sym", tol.sym);
    set("sing", tol.sing);
    set("pd", tol.pd);
    set("psd", tol.psd);
    set("cons", tol.cons);
    set("param", tol.param);
}

RunOptions parse_options(const json& o) {
    allow_keys(o,
               {"points", "seed", "radius", "tol_scale", "tolerances", "timing", "slopes", "window", "boundary_exclusion",
                "grid_tol"},
               "options");
    RunOptions r;
    if (o.contains("points")) r.points = parse_count(o["points"], "options.points");
    if (o.contains("seed")) {
        if (!o["seed"].is_number_unsigned()) parse_error("options.seed must be a non-negative integer");
        r.seed = o["seed"].get<std::uint64_t>();
    }
    if (o.contains("radius")) r.radius = parse_finite(o["radius"], "options.radius");
    if (o.contains("tol_scale")) r.tol_scale = parse_finite(o["tol_scale"], "options.tol_scale");
    if (o.contains("tolerances")) parse_tolerances(o["tolerances"], r.base_tolerances);
    if (o.contains("timing")) {
        if (!o["timing"].is_boolean()) parse_error("options.timing must be a boolean");
        r.timing = o["timing"].get<bool>();
    }
    if (o.contains("slopes")) r.slopes = parse_grid_spec(o["slopes"], "options.slopes");
    if (o.contains("window")) {
        const auto w = parse_number_list(o["window"], "options.window");
        if (w.size() != 2 || !(w[0] <= w[1])) parse_error("options.window must be [lo, hi] with lo <= hi");
        r.window = std::make_pair(w[0], w[1]);
    }
    if (o.contains("boundary_exclusion")) r.boundary_exclusion = parse_finite(o["boundary_exclusion"], "options.boundary_exclusion");
    if (o.contains("grid_tol")) r.grid_tol = parse_finite(o["grid_tol"], "options.grid_tol");
    if (!(r.radius > 0.0)) parse_error("options.radius must be positive");
    if (!(r.tol_scale > 0.0)) parse_error("options.tol_scale must be positive");
    return r;
}

SampledCandidate parse_log_candidate(const json& cand) {
    const json& lf = cand["log_family"];
    allow_keys(lf, {"kind", "lambda"}, "candidate.log_family");
    if (!lf.contains("kind")) parse_error("candidate.log_family.kind is required");
    LogFamilyMember m;
    m.kind = parse_log_kind(lf["kind"]);
    if (lf.contains("lambda")) m.lambda = parse_finite(lf["lambda"], "candidate.log_family.lambda");
    if (!(m.lambda > 0.0)) parse_error("candidate.log_family.lambda must be positive");
    if (!cand.contains("grid")) parse_error("candidate.log_family needs candidate.grid");
    SampledCandidate s;
    s.points = parse_grid_spec(cand["grid"], "candidate.grid");
    s.values.reserve(s.points.size());
    for (double x : s.points) s.values.push_back(log_family_eval(m, x));
    s.log_member = m;
    return s;
}

} // namespace

double parse_extended(const json& v, const char* what) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return kPlusInfinity;
        parse_error(std::string(what) + ": the only string value allowed is \"inf\"");
    }
    return parse_finite(v, what);
}

Vector parse_vector(const json& v, std::size_t expected_dim, const char* what) {
    std::vector<double> entries = v.is_number() ? std::vector<double>{parse_finite(v, what)} : parse_number_list(v, what);
    if (expected_dim != 0 && entries.size() != expected_dim) {
        throw Error(ErrorCode::DimMismatch, std::string(what) + " has " + std::to_string(entries.size()) +
                                                " entries, expected " + std::to_string(expected_dim));
    }
    return Vector(std::move(entries));
}

Matrix parse_matrix(const json& v, const char* what) {
    if (v.is_number()) return Matrix(1, {parse_finite(v, what)});
    if (!v.is_array() || v.empty()) parse_error(std::string(what) + " must be a number or a non-empty array");
    std::vector<double> flat;
    std::size_t n = 0;
    if (v.front().is_array()) {
        n = v.size();
        for (const auto& row : v) {
            const auto r = parse_number_list(row, what);
            if (r.size() != n) throw Error(ErrorCode::DimMismatch, std::string(what) + " is not square");
            flat.insert(flat.end(), r.begin(), r.end());
        }
    } else {
        flat = parse_number_list(v, what);
        n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
        if (n * n != flat.size()) throw Error(ErrorCode::DimMismatch, std::string(what) + ": flat entry count is not a square");
    }
    return Matrix(n, std::move(flat));
}

SampledCandidate parse_sampled(const json& doc) {
    allow_keys(doc, {"points", "values"}, "sampled function");
    if (!doc.contains("points") || !doc.contains("values")) parse_error("sampled function needs points and values");
    SampledCandidate s;
    s.points = parse_number_list(doc["points"], "points");
    if (!doc["values"].is_array()) parse_error("values must be an array");
    for (const auto& v : doc["values"]) s.values.push_back(parse_extended(v, "values"));
    if (s.points.size() != s.values.size()) throw Error(ErrorCode::DimMismatch, "points and values differ in length");
    if (s.points.empty()) parse_error("sampled function has no points");
    return s;
}

ProblemConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    ProblemConfig cfg;
    if (doc.is_object() && doc.contains("points") && doc.contains("values")) {
        cfg.sampled = parse_sampled(doc);
        return cfg;
    }
    allow_keys(doc, {"params", "candidate", "options"}, "config");
    if (doc.contains("options")) cfg.options = parse_options(doc["options"]);
    if (doc.contains("params")) cfg.params = parse_params(doc["params"]);
    if (doc.contains("candidate")) {
        const json& cand = doc["candidate"];
        allow_keys(cand, {"quadratic", "sampled", "sampled_file", "log_family", "grid"}, "candidate");
        const int kinds = static_cast<int>(cand.contains("quadratic")) + static_cast<int>(cand.contains("sampled")) +
                          static_cast<int>(cand.contains("sampled_file")) + static_cast<int>(cand.contains("log_family"));
        if (kinds != 1) parse_error("candidate must hold exactly one of quadratic, sampled, sampled_file, log_family");
        if (cand.contains("grid") && !cand.contains("log_family")) parse_error("candidate.grid only goes with log_family");
        if (cand.contains("quadratic")) {
            cfg.quadratic = parse_quadratic(cand["quadratic"], cfg.options.tolerances());
        } else if (cand.contains("sampled")) {
            cfg.sampled = parse_sampled(cand["sampled"]);
        } else if (cand.contains("sampled_file")) {
            if (!cand["sampled_file"].is_string()) parse_error("candidate.sampled_file must be a path string");
            std::filesystem::path file = cand["sampled_file"].get<std::string>();
            if (file.is_relative()) file = base_dir / file;
            cfg.sampled = parse_sampled(read_json_file(file));
        } else {
            cfg.sampled = parse_log_candidate(cand);
        }
    }
    if (cfg.params && cfg.quadratic && cfg.quadratic->dim() != cfg.params->dim()) {
        throw Error(ErrorCode::DimMismatch, "candidate and params differ in dimension");
    }
    return cfg;
}

ProblemConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_json_file(path), path.parent_path());
}

} // namespace fenchel::cli
