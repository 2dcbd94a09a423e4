#include "fenchel/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fenchel {

namespace {

bool is_plus_inf(double v) noexcept { return v == kPlusInfinity; }

void validate_values(std::span<const double> values) {
    bool any_finite = false;
    for (double v : values) {
        if (std::isnan(v)) throw Error(ErrorCode::InvalidArgument, "sampled value is NaN");
        if (v == -kPlusInfinity) throw Error(ErrorCode::InvalidArgument, "sampled value is -inf");
        any_finite = any_finite || std::isfinite(v);
    }
    if (!any_finite) throw Error(ErrorCode::AllInfinite, "every sampled value is +inf");
}

// Kept out of line so brute and fast evaluate the identical expression.
[[gnu::noinline]] double affine_gap(double s, double x, double fx) noexcept { return s * x - fx; }

// Ties between nodes may differ only in the sign of zero; report +0.
double canonical_zero(double v) noexcept { return v + 0.0; }

} // namespace

// --- grids and samples ------------------------------------------------------

Grid1D::Grid1D(std::vector<double> points) : pts_(std::move(points)) {
    if (pts_.size() < 2) throw Error(ErrorCode::InvalidArgument, "Grid1D needs at least two nodes");
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        if (!std::isfinite(pts_[i])) throw Error(ErrorCode::InvalidArgument, "Grid1D node is not finite");
        if (i > 0 && !(pts_[i] > pts_[i - 1])) throw Error(ErrorCode::InvalidArgument, "Grid1D is not strictly increasing");
    }
}

Grid1D Grid1D::uniform(double lo, double hi, std::size_t count) {
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "uniform grid needs at least two nodes");
    std::vector<double> pts(count);
    const double step = (hi - lo) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) pts[i] = lo + step * static_cast<double>(i);
    pts.back() = hi;
    return Grid1D(std::move(pts));
}

Grid1D Grid1D::with_step(double lo, double hi, double h) {
    if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
    const auto steps = static_cast<std::size_t>(std::llround((hi - lo) / h));
    std::vector<double> pts(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) pts[i] = lo + h * static_cast<double>(i);
    return Grid1D(std::move(pts));
}

double Grid1D::max_spacing() const noexcept {
    double h = 0.0;
    for (std::size_t i = 1; i < pts_.size(); ++i) h = std::max(h, pts_[i] - pts_[i - 1]);
    return h;
}

SampledFn::SampledFn(Grid1D grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw Error(ErrorCode::DimMismatch, "SampledFn: one value per node");
    validate_values(values_);
}

SampledFn SampledFn::sample(const Grid1D& grid, const std::function<double(double)>& f) {
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
    return {grid, std::move(vals)};
}

SampledFn2D::SampledFn2D(Grid1D xs, Grid1D ys, std::vector<double> values)
    : xs_(std::move(xs)), ys_(std::move(ys)), values_(std::move(values)) {
    if (values_.size() != xs_.size() * ys_.size()) throw Error(ErrorCode::DimMismatch, "SampledFn2D: one value per node");
    validate_values(values_);
}

SampledFn2D SampledFn2D::sample(const Grid1D& xs, const Grid1D& ys, const std::function<double(double, double)>& f) {
    std::vector<double> vals(xs.size() * ys.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) vals[i * ys.size() + j] = f(xs[i], ys[j]);
    return {xs, ys, std::move(vals)};
}

// --- the log family -----------------------------------------------------------

std::string_view to_string(LogKind k) noexcept {
    switch (k) {
    case LogKind::F1: return "f1";
    case LogKind::F2: return "f2";
    case LogKind::F2Reflected: return "f2_reflected";
    case LogKind::F3: return "f3";
    case LogKind::F3Reflected: return "f3_reflected";
    case LogKind::F4: return "f4";
    }
    return "unknown";
}

double log_family_eval(const LogFamilyMember& m, double x) {
    switch (m.kind) {
    case LogKind::F1: return 0.5 * x * x;
    case LogKind::F2: return x <= 0.0 ? kPlusInfinity : -0.5 - std::log(x);
    case LogKind::F2Reflected: return log_family_eval({LogKind::F2, m.lambda}, -x);
    case LogKind::F3: return x < 0.0 ? kPlusInfinity : 0.0;
    case LogKind::F3Reflected: return log_family_eval({LogKind::F3, m.lambda}, -x);
    case LogKind::F4:
        if (!(m.lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "f4 needs lambda > 0");
        return x <= 0.0 ? 0.5 * m.lambda * x * x : x * x / (2.0 * m.lambda);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown log family member");
}

// --- conjugates ---------------------------------------------------------------

std::vector<double> brute_conjugate_values(const SampledFn& f, std::span<const double> slopes) {
    std::vector<double> out(slopes.size());
    for (std::size_t k = 0; k < slopes.size(); ++k) {
        double best = -kPlusInfinity;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (is_plus_inf(f.value(i))) continue;
            const double v = affine_gap(slopes[k], f.x(i), f.value(i));
            if (v > best) best = v;
        }
        out[k] = canonical_zero(best);
    }
    return out;
}

SampledFn brute_conjugate(const SampledFn& f, const Grid1D& slopes) {
    return {slopes, brute_conjugate_values(f, slopes.points())};
}

std::vector<std::size_t> lower_hull(const SampledFn& f) {
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (is_plus_inf(f.value(i))) continue;
        while (hull.size() >= 2) {
            const std::size_t a = hull[hull.size() - 2];
            const std::size_t b = hull.back();
            const double cross = (f.x(b) - f.x(a)) * (f.value(i) - f.value(a)) -
                                 (f.value(b) - f.value(a)) * (f.x(i) - f.x(a));
            if (cross > 0.0) break;
            hull.pop_back();
        }
        hull.push_back(i);
    }
    return hull;
}

std::vector<double> fast_conjugate_values(const SampledFn& f, std::span<const double> slopes) {
    for (std::size_t k = 1; k < slopes.size(); ++k) {
        if (slopes[k] < slopes[k - 1]) throw Error(ErrorCode::InvalidArgument, "fast_conjugate needs sorted slopes");
    }
    const auto hull = lower_hull(f);
    std::vector<double> out(slopes.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < slopes.size(); ++j) {
        const double s = slopes[j];
        double cur = affine_gap(s, f.x(hull[k]), f.value(hull[k]));
        while (k + 1 < hull.size()) {
            const double next = affine_gap(s, f.x(hull[k + 1]), f.value(hull[k + 1]));
            if (next < cur) break;
            cur = next;
            ++k;
        }
        out[j] = canonical_zero(cur);
    }
    return out;
}

SampledFn fast_conjugate(const SampledFn& f, const Grid1D& slopes) {
    return {slopes, fast_conjugate_values(f, slopes.points())};
}

SampledFn biconjugate(const SampledFn& f) {
    const auto hull = lower_hull(f);
    std::vector<double> out(f.size(), kPlusInfinity);
    for (std::size_t v = 0; v < hull.size(); ++v) {
        const std::size_t i0 = hull[v];
        out[i0] = f.value(i0);
        if (v + 1 == hull.size()) break;
        const std::size_t i1 = hull[v + 1];
        const double x0 = f.x(i0), x1 = f.x(i1);
        const double y0 = f.value(i0), y1 = f.value(i1);
        for (std::size_t i = i0 + 1; i < i1; ++i) {
            const double t = (f.x(i) - x0) / (x1 - x0);
            out[i] = y0 + t * (y1 - y0);
        }
    }
    return {f.grid(), std::move(out)};
}

GridResidual grid_fixed_point_residual(const TransformParams& p, const SampledFn& f, const GridCheckOptions& opts) {
    if (p.dim() != 1) throw Error(ErrorCode::DimMismatch, "grid_fixed_point_residual needs a one-dimensional transform");
    const double e = p.E()(0, 0);
    const double c = p.c()[0];
    const double w = p.w()[0];
    const double tau = p.tau();
    const double beta = p.beta();

    std::vector<double> inf_nodes;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (is_plus_inf(f.value(i))) inf_nodes.push_back(f.x(i));
    auto near_boundary = [&](double x) {
        if (opts.boundary_exclusion <= 0.0 || inf_nodes.empty()) return false;
        const auto it = std::lower_bound(inf_nodes.begin(), inf_nodes.end(), x);
        if (it != inf_nodes.end() && *it - x <= opts.boundary_exclusion) return true;
        return it != inf_nodes.begin() && x - *(it - 1) <= opts.boundary_exclusion;
    };

    std::vector<std::size_t> scored;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.x(i);
        if (is_plus_inf(f.value(i))) continue;
        if (opts.window && (x < opts.window->first || x > opts.window->second)) continue;
        if (near_boundary(x)) continue;
        scored.push_back(i);
    }
    if (scored.empty()) throw Error(ErrorCode::InvalidArgument, "no finite node to score");
    if (e < 0.0) std::reverse(scored.begin(), scored.end());

    std::vector<double> slopes(scored.size());
    for (std::size_t k = 0; k < scored.size(); ++k) slopes[k] = e * f.x(scored[k]) + c;
    const auto conj = fast_conjugate_values(f, slopes);

    std::vector<Vector> pts;
    std::vector<double> res(scored.size());
    pts.reserve(scored.size());
    for (std::size_t k = 0; k < scored.size(); ++k) {
        const double x = f.x(scored[k]);
        pts.push_back(Vector{x});
        res[k] = f.value(scored[k]) - tau * conj[k] - w * x - beta;
    }
    std::size_t k = 0;
    GridResidual out;
    out.residual = residual_scan(pts, [&](const Vector&) { return res[k++]; });
    out.h = f.grid().max_spacing();
    return out;
}

SampledFn2D conjugate_2d_brute(const SampledFn2D& f, const Grid1D& sx, const Grid1D& sy) {
    constexpr std::size_t kMaxAxis = 101;
    if (f.xs().size() > kMaxAxis || f.ys().size() > kMaxAxis || sx.size() > kMaxAxis || sy.size() > kMaxAxis) {
        throw Error(ErrorCode::InvalidArgument, "conjugate_2d_brute is limited to 101 nodes per axis");
    }
    const std::size_t nx = f.xs().size(), ny = f.ys().size();
    std::vector<double> out(sx.size() * sy.size());
    for (std::size_t a = 0; a < sx.size(); ++a) {
        for (std::size_t b = 0; b < sy.size(); ++b) {
            double best = -kPlusInfinity;
            for (std::size_t i = 0; i < nx; ++i) {
                const double sxi = sx[a] * f.xs()[i];
                for (std::size_t j = 0; j < ny; ++j) {
                    const double v = f.value(i, j);
                    if (is_plus_inf(v)) continue;
                    best = std::max(best, sxi + sy[b] * f.ys()[j] - v);
                }
            }
            out[a * sy.size() + b] = best;
        }
    }
    return {sx, sy, std::move(out)};
}

GapReport fenchel_young_check(const SampledFn& f, std::span<const std::pair<double, double>> pairs) {
    const auto nodes = f.grid().points();
    GapReport rep;
    rep.min_gap = kPlusInfinity;
    double sum = 0.0;
    for (const auto& [x, s] : pairs) {
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), x);
        if (it == nodes.end() || *it != x) {
            throw Error(ErrorCode::InvalidArgument, "fenchel_young_check: x = " + std::to_string(x) + " is not a node");
        }
        const double fx = f.value(static_cast<std::size_t>(it - nodes.begin()));
        if (is_plus_inf(fx)) continue;
        const double fs = brute_conjugate_values(f, std::span<const double>(&s, 1)).front();
        const double gap = fs + fx - s * x;
        sum += gap;
        ++rep.pairs;
        if (gap < rep.min_gap) {
            rep.min_gap = gap;
            rep.worst_x = x;
            rep.worst_slope = s;
        }
    }
    if (rep.pairs == 0) throw Error(ErrorCode::AllInfinite, "fenchel_young_check: no pair at a finite node");
    rep.mean_gap = sum / static_cast<double>(rep.pairs);
    return rep;
}

} // namespace fenchel
