#include "demos.hpp"

#include <algorithm>
#include <cmath>

#include "fenchel/sampling.hpp"
#include "report.hpp"

namespace fenchel::cli {

namespace {

json check(const std::string& name, const ResidualReport& r, double threshold, bool& all_pass) {
    const bool ok = r.max_abs <= threshold;
    all_pass = all_pass && ok;
    return {{"name", name}, {"residual", to_json(r)}, {"threshold", threshold}, {"pass", ok}};
}

DemoOutcome demo_energy(const RunOptions& opts) {
    DemoOutcome out;
    json cases = json::array();
    const Tolerances tol = opts.tolerances();
    for (std::size_t n = 1; n <= 3; ++n) {
        const TransformParams p = TransformParams::identity(n);
        const Classification cls = classify(p, tol);
        const bool is_energy = cls.solution && cls.solution->A == SymMatrix::identity(n) &&
                               cls.solution->b == Vector::zeros(n) && cls.solution->gamma == 0.0;
        const bool tag_ok = cls.tag == ClassificationTag::UniqueAllFunctions;
        out.pass = out.pass && is_energy && tag_ok;
        const auto pts = sample_box(n, opts.points, opts.seed, opts.radius);
        json c = check("dim " + std::to_string(n), transform_residual(p, QuadraticFn::energy(n), pts, tol), 1e-12, out.pass);
        c["classification"] = to_json(cls);
        c["solutionIsEnergy"] = is_energy;
        cases.push_back(std::move(c));
    }
    out.payload = {{"cases", std::move(cases)}};
    return out;
}

DemoOutcome demo_skew(const RunOptions& opts) {
    DemoOutcome out;
    json cases = json::array();
    const Tolerances tol = opts.tolerances();
    const std::vector<SymMatrix> Bs = {
        SymMatrix{{1.0, 0.0}, {0.0, 1.0}},
        SymMatrix{{2.0, 0.0}, {0.0, 0.5}},
        SymMatrix{{2.0, 1.0}, {1.0, 1.0}},
    };
    const auto pts2 = sample_box(2, opts.points, opts.seed, opts.radius);
    std::vector<QuadraticFn> sols;
    for (std::size_t k = 0; k < Bs.size(); ++k) {
        sols.push_back(skew_solution(Bs[k], tol));
        json c = check("B" + std::to_string(k + 1), transform_residual(rotation_params(1), sols.back(), pts2, tol), 1e-9,
                       out.pass);
        c["B"] = to_json(Bs[k].matrix());
        cases.push_back(std::move(c));
    }
    const QuadraticFn sum = direct_sum(std::span<const QuadraticFn>(sols.data() + 1, 2));
    const auto pts4 = sample_box(4, opts.points, opts.seed, opts.radius);
    cases.push_back(check("B2 (+) B3 on R^4", transform_residual(rotation_params(2), sum, pts4, tol), 1e-9, out.pass));
    out.payload = {{"cases", std::move(cases)}};
    return out;
}

DemoOutcome demo_log(const RunOptions&) {
    DemoOutcome out;
    json cases = json::array();
    constexpr double h = 0.005;
    constexpr double window = 5.0;
    const TransformParams p(Matrix{{-1.0}}, Vector{0.0}, Vector{0.0}, 1.0, 0.0);
    std::vector<LogFamilyMember> members = {{LogKind::F1}, {LogKind::F3}, {LogKind::F3Reflected}};
    for (double lambda : {0.5, 1.0, 2.0, 7.0}) members.push_back({LogKind::F4, lambda});
    members.push_back({LogKind::F2});
    members.push_back({LogKind::F2Reflected});
    for (const auto& m : members) {
        const bool log_branch = m.kind == LogKind::F2 || m.kind == LogKind::F2Reflected;
        const SampledFn f = SampledFn::sample(log_member_grid(m, window, h), [&](double x) { return log_family_eval(m, x); });
        GridCheckOptions gopts;
        gopts.window = std::make_pair(-window, window);
        if (log_branch) gopts.boundary_exclusion = 10.0 * h;
        const GridResidual g = grid_fixed_point_residual(p, f, gopts);
        std::string name(to_string(m.kind));
        if (m.kind == LogKind::F4) name += " lambda=" + json(m.lambda).dump();
        json c = check(name, g.residual, (log_branch ? 4.0 : 2.0) * h, out.pass);
        c["h"] = g.h;
        cases.push_back(std::move(c));
    }
    out.payload = {{"cases", std::move(cases)}};
    return out;
}

DemoOutcome demo_nonexistence(const RunOptions& opts) {
    DemoOutcome out;
    json cases = json::array();
    const Tolerances tol = opts.tolerances();
    struct Case {
        const char* name;
        Vector c;
        Vector w;
    };
    const std::vector<Case> list = {
        {"c = 0, w = 1", Vector{0.0}, Vector{1.0}},
        {"c = 1, w = 0", Vector{1.0}, Vector{0.0}},
        {"c = 0, w = (1, -2)", Vector{0.0, 0.0}, Vector{1.0, -2.0}},
        {"c = (0.5, 3), w = 0", Vector{0.5, 3.0}, Vector{0.0, 0.0}},
    };
    for (const auto& cs : list) {
        const std::size_t n = cs.c.dim();
        const TransformParams p(-1.0 * Matrix::identity(n), cs.c, cs.w, 1.0, 0.0);
        const Classification cls = classify(p, tol);
        const SelfAdjointResult built = solve_self_adjoint(p, tol);
        const auto* failure = std::get_if<ConstructionFailure>(&built);
        const bool ok = cls.tag == ClassificationTag::NoSolution && failure != nullptr;
        out.pass = out.pass && ok;
        json c = {{"name", cs.name}, {"classification", to_json(cls)}};
        c["constructionFailure"] = failure ? to_json(*failure) : json(nullptr);
        c["pass"] = ok;
        cases.push_back(std::move(c));
    }
    out.payload = {{"cases", std::move(cases)}};
    return out;
}

DemoOutcome demo_lql(const RunOptions& opts) {
    DemoOutcome out;
    json cases = json::array();
    const Tolerances tol = opts.tolerances();
    const std::vector<SymMatrix> Ls = {
        SymMatrix{{4.0, 0.0}, {0.0, 1.0}},
        SymMatrix{{2.0, 1.0}, {1.0, 2.0}},
        SymMatrix{{3.0, 1.0, 0.5}, {1.0, 2.0, 0.25}, {0.5, 0.25, 1.5}},
    };
    for (std::size_t k = 0; k < Ls.size(); ++k) {
        const SymMatrix Q = solve_LQL(Ls[k], tol);
        const double r = lql_residual(Ls[k], Q);
        const bool ok = r <= 1e-9;
        out.pass = out.pass && ok;
        cases.push_back({{"name", "L" + std::to_string(k + 1)},
                         {"L", to_json(Ls[k].matrix())},
                         {"Q", to_json(Q.matrix())},
                         {"lqlResidual", number(r)},
                         {"threshold", 1e-9},
                         {"pass", ok}});
    }
    const double t = 0.6;
    const Matrix U{{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}};
    const SymMatrix Qi = SymMatrix::symmetrize(U * Matrix::identity(2) * U.transpose());
    cases.push_back(check("U I U^T is the identity", check_involution_psd(Qi, tol), 1e-7, out.pass));
    out.payload = {{"cases", std::move(cases)}};
    return out;
}

} // namespace

const std::vector<std::string>& demo_names() {
    static const std::vector<std::string> names = {"energy", "skew", "log", "nonexistence", "lql"};
    return names;
}

DemoOutcome run_demo(const std::string& name, const RunOptions& opts) {
    if (name == "energy") return demo_energy(opts);
    if (name == "skew") return demo_skew(opts);
    if (name == "log") return demo_log(opts);
    if (name == "nonexistence") return demo_nonexistence(opts);
    if (name == "lql") return demo_lql(opts);
    throw Error(ErrorCode::UnknownDemo, "'" + name + "'");
}

Grid1D integer_step_grid(long lo_k, long hi_k, double h) {
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(hi_k - lo_k + 1));
    for (long k = lo_k; k <= hi_k; ++k) pts.push_back(static_cast<double>(k) * h);
    return Grid1D(std::move(pts));
}

Grid1D log_member_grid(const LogFamilyMember& m, double window, double h) {
    // The maximizer for slope -x sits at -x (f1), 1/x (f2) and -x/λ or -λx (f4).
    double lo = -(window + 1.0);
    double hi = window + 1.0;
    switch (m.kind) {
    case LogKind::F2: hi = 5.0 * window + 1.0; break;
    case LogKind::F2Reflected: lo = -(5.0 * window + 1.0); break;
    case LogKind::F4: {
        const double r = window * std::max(m.lambda, 1.0 / m.lambda) + 1.0;
        lo = -r;
        hi = r;
        break;
    }
    default: break;
    }
    return integer_step_grid(std::lround(lo / h), std::lround(hi / h), h);
}

} // namespace fenchel::cli
