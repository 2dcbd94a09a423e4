#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "demos.hpp"
#include "fenchel/sampling.hpp"
#include "report.hpp"

namespace fenchel::cli {

namespace {

struct Invocation {
    std::string command;
    std::string config_path;
    std::string out_path;
    std::string demo;
    bool check = false;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> points;
    std::optional<double> tol_scale;
};

struct Outcome {
    json payload;
    int exit_code = kExitOk;
};

ProblemConfig load(const Invocation& inv) {
    ProblemConfig cfg = inv.config_path.empty() ? ProblemConfig{} : load_config(inv.config_path);
    if (inv.seed) cfg.options.seed = *inv.seed;
    if (inv.points) cfg.options.points = *inv.points;
    if (inv.tol_scale) {
        if (!(*inv.tol_scale > 0.0)) throw Error(ErrorCode::ParseError, "--tol-scale must be positive");
        cfg.options.tol_scale = *inv.tol_scale;
    }
    return cfg;
}

const TransformParams& need_params(const ProblemConfig& cfg) {
    if (!cfg.params) throw Error(ErrorCode::ParseError, "config has no params");
    return *cfg.params;
}

double magnitude(const TransformParams& p, const QuadraticFn& q) {
    return std::max({p.E().max_abs(), p.c().max_abs(), p.w().max_abs(), std::abs(p.beta()), q.A.matrix().max_abs(),
                     q.b.max_abs(), std::abs(q.gamma)});
}

Outcome cmd_classify(const ProblemConfig& cfg) {
    const RunOptions& o = cfg.options;
    const Classification cls =
        classify(need_params(cfg), o.tolerances(), cfg.quadratic, ScanOptions{o.points, o.seed, o.radius});
    Outcome out;
    out.payload["classification"] = to_json(cls);
    out.exit_code = cls.tag == ClassificationTag::Undetermined ? kExitUndetermined : kExitOk;
    return out;
}

Outcome cmd_solve(const ProblemConfig& cfg) {
    const TransformParams& p = need_params(cfg);
    const Tolerances tol = cfg.options.tolerances();
    if (!is_symmetric(p.E(), tol)) throw Error(ErrorCode::NotSymmetric, "solve needs a symmetric E");
    Outcome out;
    std::optional<QuadraticFn> sol;
    if (definiteness(SymMatrix(p.E(), tol), tol) == Definiteness::PositiveDefinite) {
        out.payload["method"] = "positive_definite";
        sol = solve_positive_definite(p, tol);
    } else {
        out.payload["method"] = "self_adjoint";
        SelfAdjointResult built = solve_self_adjoint(p, tol);
        if (auto* f = std::get_if<QuadraticFn>(&built)) {
            sol = std::move(*f);
        } else {
            out.payload["tag"] = to_string(ClassificationTag::NoQuadraticSolutionInConstruction);
            out.payload["constructionFailure"] = to_json(std::get<ConstructionFailure>(built));
            return out;
        }
    }
    out.payload["tag"] = to_string(ClassificationTag::QuadraticSolutionExists);
    out.payload["solution"] = to_json(*sol);
    const auto pts = sample_box(p.dim(), cfg.options.points, cfg.options.seed, cfg.options.radius);
    const ResidualReport r = transform_residual(p, *sol, pts, tol);
    const double threshold = tol.cons * (1.0 + magnitude(p, *sol));
    const bool ok = r.max_abs <= threshold;
    out.payload["selfCheck"] = {{"transformResidual", to_json(r)}, {"threshold", threshold}, {"pass", ok}};
    if (!ok) out.exit_code = kExitAssertion;
    return out;
}

Outcome verify_quadratic(const TransformParams& p, const QuadraticFn& q, const RunOptions& o) {
    const Tolerances tol = o.tolerances();
    const auto pts = sample_box(p.dim(), o.points, o.seed, o.radius);
    const double threshold = tol.cons * (1.0 + magnitude(p, q));
    const bool strictly_convex = is_strictly_convex(q, tol);
    bool all = strictly_convex;
    json checks = json::array();
    auto add = [&](const std::string& name, const ResidualReport& r) {
        const bool ok = r.max_abs <= threshold;
        all = all && ok;
        checks.push_back({{"name", name}, {"residual", to_json(r)}, {"pass", ok}});
    };
    auto skip = [&](const std::string& name, const std::string& why) {
        checks.push_back({{"name", name}, {"skipped", why}});
    };
    const ScalarFunction f = as_function(q);
    if (strictly_convex) {
        add("transform", transform_residual(p, q, pts, tol));
        add("functional_differential", functional_differential_residual(p, q, pts, tol));
    } else {
        skip("transform", "leading coefficient not positive definite");
        skip("functional_differential", "leading coefficient not positive definite");
    }
    add("functional_Tsquared", functional_eq_residual(p, f, FunctionalVariant::Tsquared, pts, tol));
    add("functional_General", functional_eq_residual(p, f, FunctionalVariant::General, pts, tol));
    if (is_symmetric(p.E(), tol)) {
        add("functional_SelfAdjoint", functional_eq_residual(p, f, FunctionalVariant::SelfAdjoint, pts, tol));
    } else {
        skip("functional_SelfAdjoint", "E not symmetric");
    }
    try {
        add("form_quadratic", verify_form_quadratic(p, q, tol));
    } catch (const Error& e) {
        if (e.code() != ErrorCode::Singular) throw;
        all = false;
        skip("form_quadratic", "leading coefficient singular");
    }
    Outcome out;
    out.payload["candidateKind"] = "quadratic";
    out.payload["strictlyConvex"] = strictly_convex;
    out.payload["threshold"] = threshold;
    out.payload["checks"] = std::move(checks);
    out.payload["pass"] = all;
    return out;
}

Outcome verify_sampled(const TransformParams& p, const SampledCandidate& s, const RunOptions& o) {
    const SampledFn f(Grid1D(s.points), s.values);
    GridCheckOptions gopts;
    gopts.window = o.window;
    gopts.boundary_exclusion = o.boundary_exclusion;
    const GridResidual g = grid_fixed_point_residual(p, f, gopts);
    const double threshold = o.grid_tol * g.h;
    Outcome out;
    out.payload["candidateKind"] = "sampled";
    if (s.log_member) {
        out.payload["logFamily"] = {{"kind", to_string(s.log_member->kind)}, {"lambda", s.log_member->lambda}};
    }
    out.payload["h"] = g.h;
    out.payload["threshold"] = threshold;
    out.payload["gridResidual"] = to_json(g.residual);
    out.payload["pass"] = g.residual.max_abs <= threshold;
    return out;
}

Outcome cmd_verify(const ProblemConfig& cfg) {
    const TransformParams& p = need_params(cfg);
    if (cfg.quadratic) return verify_quadratic(p, *cfg.quadratic, cfg.options);
    if (cfg.sampled) return verify_sampled(p, *cfg.sampled, cfg.options);
    throw Error(ErrorCode::ParseError, "verify needs a candidate");
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b, std::size_t& mismatches) {
    mismatches = 0;
    for (std::size_t i = 0; i < a.size(); ++i) mismatches += std::memcmp(&a[i], &b[i], sizeof(double)) != 0;
    return mismatches == 0 && a.size() == b.size();
}

Outcome cmd_conjugate(const ProblemConfig& cfg, bool check) {
    if (!cfg.sampled) throw Error(ErrorCode::ParseError, "conjugate needs sampled input");
    const SampledCandidate& s = *cfg.sampled;
    const std::vector<double> slopes = cfg.options.slopes.value_or(s.points);
    Outcome out;
    std::vector<double> values;
    if (s.points.size() == 1) {
        // One node: the supremum is the single affine term.
        if (s.values[0] == kPlusInfinity) throw Error(ErrorCode::AllInfinite, "every sampled value is +inf");
        for (double slope : slopes) values.push_back(slope * s.points[0] - s.values[0] + 0.0);
        out.payload["method"] = "single_node";
    } else {
        const SampledFn f(Grid1D(s.points), s.values);
        values = fast_conjugate_values(f, slopes);
        out.payload["method"] = "fast";
        if (check) {
            const std::vector<double> oracle = brute_conjugate_values(f, slopes);
            std::size_t mismatches = 0;
            const bool equal = bitwise_equal(values, oracle, mismatches);
            out.payload["check"] = {{"oracle", "brute"}, {"bitwiseEqual", equal}, {"mismatches", mismatches}};
            if (!equal) out.exit_code = kExitAssertion;
        }
    }
    out.payload["conjugate"] = {{"points", numbers(slopes)}, {"values", numbers(values)}};
    return out;
}

Outcome cmd_demo(const ProblemConfig& cfg, const std::string& name) {
    DemoOutcome d = run_demo(name, cfg.options);
    Outcome out;
    out.payload["demo"] = name;
    out.payload["cases"] = std::move(d.payload["cases"]);
    out.payload["pass"] = d.pass;
    out.exit_code = d.pass ? kExitOk : kExitAssertion;
    return out;
}

json command_echo(const Invocation& inv, const ProblemConfig& cfg) {
    json echo = {{"name", inv.command}};
    if (!inv.demo.empty()) echo["demo"] = inv.demo;
    echo["config"] = inv.config_path.empty() ? json(nullptr) : json(inv.config_path);
    echo["seed"] = cfg.options.seed;
    echo["points"] = cfg.options.points;
    echo["radius"] = cfg.options.radius;
    echo["tolScale"] = cfg.options.tol_scale;
    echo["check"] = inv.check;
    return echo;
}

int execute(const Invocation& inv, std::ostream& out) {
    const auto start = std::chrono::steady_clock::now();
    const ProblemConfig cfg = load(inv);
    Outcome res;
    if (inv.command == "classify") res = cmd_classify(cfg);
    else if (inv.command == "solve") res = cmd_solve(cfg);
    else if (inv.command == "verify") res = cmd_verify(cfg);
    else if (inv.command == "conjugate") res = cmd_conjugate(cfg, inv.check);
    else res = cmd_demo(cfg, inv.demo);

    json report = {{"schemaVersion", kSchemaVersion}, {"command", command_echo(inv, cfg)}};
    report["tolerances"] = to_json(cfg.options.tolerances());
    for (auto& item : res.payload.items()) report[item.key()] = std::move(item.value());
    report["exitCode"] = res.exit_code;
    if (cfg.options.timing) {
        report["wallTimeSeconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    const std::string text = report.dump(2) + "\n";
    if (inv.out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(inv.out_path, std::ios::binary);
        if (!file || !(file << text)) throw Error(ErrorCode::InvalidArgument, "cannot write '" + inv.out_path + "'");
    }
    return res.exit_code;
}

void add_common(CLI::App* sub, Invocation& inv) {
    sub->add_option("--config", inv.config_path, "Problem config (JSON)");
    sub->add_option("--out", inv.out_path, "Write the report here instead of stdout");
    sub->add_flag("--check", inv.check, "Cross-check against the brute-force oracle (conjugate)");
    sub->add_option("--seed", inv.seed, "Seed for sample points");
    sub->add_option("--points", inv.points, "Number of sample points");
    sub->add_option("--tol-scale", inv.tol_scale, "Multiply every tolerance by this factor");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Invocation inv;
    CLI::App app{"Fixed points of the Legendre-Fenchel transform", "fenchel"};
    app.require_subcommand(1);
    struct Subcommand {
        const char* name;
        const char* help;
    };
    for (const Subcommand& s : {Subcommand{"classify", "Classify the fixed-point problem in a config"},
                                Subcommand{"solve", "Construct a quadratic solution for symmetric E"},
                                Subcommand{"verify", "Check a candidate against the fixed-point equation"},
                                Subcommand{"conjugate", "Discrete conjugate of sampled data"},
                                Subcommand{"demo", "Run a built-in scenario"}}) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        add_common(sub, inv);
        sub->callback([&inv, name = std::string(s.name)] { inv.command = name; });
        if (std::string(s.name) == "demo") sub->add_option("name", inv.demo, "Scenario name")->required();
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }
    if (inv.command != "demo" && inv.config_path.empty()) {
        err << "error: " << inv.command << " needs --config\n";
        return kExitInputError;
    }

    try {
        return execute(inv, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitAssertion;
    }
}

} // namespace fenchel::cli
