#include "report.hpp"

#include <cmath>

namespace fenchel::cli {

json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

json numbers(std::span<const double> xs) {
    json out = json::array();
    for (double x : xs) out.push_back(number(x));
    return out;
}

json to_json(const Vector& v) { return numbers(v.data()); }

json to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) rows.push_back(numbers(m.row_major().subspan(i * m.size(), m.size())));
    return rows;
}

json to_json(const QuadraticFn& q) {
    return {{"A", to_json(q.A.matrix())}, {"b", to_json(q.b)}, {"gamma", number(q.gamma)}};
}

json to_json(const ResidualReport& r) {
    return {{"maxAbs", number(r.max_abs)},
            {"meanAbs", number(r.mean_abs)},
            {"samplePoints", r.sample_points},
            {"worstPoint", to_json(r.worst_point)}};
}

json to_json(const Classification& c) {
    json out = {{"tag", to_string(c.tag)}};
    if (c.solution) out["solution"] = to_json(*c.solution);
    if (c.x0) out["x0"] = to_json(*c.x0);
    out["note"] = c.note;
    if (c.candidate_scan) out["candidateScan"] = to_json(*c.candidate_scan);
    return out;
}

json to_json(const Tolerances& t) {
    return {{"sym", t.sym}, {"sing", t.sing}, {"pd", t.pd}, {"psd", t.psd}, {"cons", t.cons}, {"param", t.param}};
}

json to_json(const GapReport& g) {
    return {{"minGap", number(g.min_gap)},
            {"meanGap", number(g.mean_gap)},
            {"pairs", g.pairs},
            {"worstX", number(g.worst_x)},
            {"worstSlope", number(g.worst_slope)}};
}

json to_json(const ConstructionFailure& f) {
    return {{"systemResidual", number(f.system_residual)}, {"reason", f.reason}};
}

} // namespace fenchel::cli
