#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "fenchel/fixpoint.hpp"

namespace fenchel {

inline constexpr double kPlusInfinity = std::numeric_limits<double>::infinity();

/// Strictly increasing finite nodes, at least two.
class Grid1D {
public:
    explicit Grid1D(std::vector<double> points);

    /// `count` equally spaced nodes from lo to hi inclusive.
    static Grid1D uniform(double lo, double hi, std::size_t count);
    /// Nodes lo + k·h for k = 0..round((hi − lo)/h).
    static Grid1D with_step(double lo, double hi, double h);

    std::size_t size() const noexcept { return pts_.size(); }
    double operator[](std::size_t i) const { return pts_[i]; }
    std::span<const double> points() const noexcept { return pts_; }
    double max_spacing() const noexcept;

private:
    std::vector<double> pts_;
};

/// Samples of an extended-real function: finite or +∞, never −∞ or NaN, and
/// finite at one node at least (AllInfinite otherwise).
class SampledFn {
public:
    SampledFn(Grid1D grid, std::vector<double> values);

    static SampledFn sample(const Grid1D& grid, const std::function<double(double)>& f);

    const Grid1D& grid() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double x(std::size_t i) const { return grid_[i]; }
    double value(std::size_t i) const { return values_[i]; }

private:
    Grid1D grid_;
    std::vector<double> values_;
};

/// Tensor-grid samples, value(i, j) = f(xs[i], ys[j]) stored row-major.
class SampledFn2D {
public:
    SampledFn2D(Grid1D xs, Grid1D ys, std::vector<double> values);

    static SampledFn2D sample(const Grid1D& xs, const Grid1D& ys, const std::function<double(double, double)>& f);

    const Grid1D& xs() const noexcept { return xs_; }
    const Grid1D& ys() const noexcept { return ys_; }
    std::span<const double> values() const noexcept { return values_; }
    double value(std::size_t i, std::size_t j) const { return values_[i * ys_.size() + j]; }

private:
    Grid1D xs_;
    Grid1D ys_;
    std::vector<double> values_;
};

enum class LogKind { F1, F2, F2Reflected, F3, F3Reflected, F4 };

std::string_view to_string(LogKind k) noexcept;

/// One of the non-quadratic solutions of f(x) = f*(−x) on ℝ.
struct LogFamilyMember {
    LogKind kind = LogKind::F1;
    /// Only used by F4; must be > 0.
    double lambda = 1.0;
};

/// ½x²; −½ − log x on (0,∞); 0 on [0,∞); λx²/2 on (−∞,0] and x²/(2λ) on
/// [0,∞); reflections x ↦ f(−x). +∞ off the effective domain.
double log_family_eval(const LogFamilyMember& m, double x);

/// Conjugate values max_i (s·xᵢ − f(xᵢ)) by exhaustive search over finite nodes.
std::vector<double> brute_conjugate_values(const SampledFn& f, std::span<const double> slopes);
SampledFn brute_conjugate(const SampledFn& f, const Grid1D& slopes);

/// Indices of the lower convex hull vertices of the finite samples, left to
/// right. Collinear middle points are dropped.
std::vector<std::size_t> lower_hull(const SampledFn& f);

/// Same values as brute_conjugate_values, bit for bit, in O(n + m) after the
/// hull pass. Slopes must be non-decreasing (InvalidArgument).
std::vector<double> fast_conjugate_values(const SampledFn& f, std::span<const double> slopes);
SampledFn fast_conjugate(const SampledFn& f, const Grid1D& slopes);

/// Lower convex hull of the samples evaluated on the same grid: vertex values
/// are kept exactly, nodes between vertices are interpolated, nodes outside
/// the hull's x-range become +∞.
SampledFn biconjugate(const SampledFn& f);

struct GridCheckOptions {
    /// Only nodes inside [lo, hi] are scored.
    std::optional<std::pair<double, double>> window;
    /// Finite nodes within this distance of a +∞ node are skipped.
    double boundary_exclusion = 0.0;
};

struct GridResidual {
    ResidualReport residual;
    /// Largest node spacing of the sampled grid.
    double h = 0.0;
};

/// max |f(xᵢ) − τ·f*(e·xᵢ + c) − w·xᵢ − β| over scored finite nodes, with f* the
/// discrete conjugate. Requires a one-dimensional transform (DimMismatch).
GridResidual grid_fixed_point_residual(const TransformParams& p, const SampledFn& f, const GridCheckOptions& opts = {});

/// Exhaustive two-variable conjugate. Both input axes and both slope axes are
/// limited to 101 nodes (InvalidArgument).
SampledFn2D conjugate_2d_brute(const SampledFn2D& f, const Grid1D& sx, const Grid1D& sy);

struct GapReport {
    /// Most negative value of f*(s) + f(x) − s·x over the pairs.
    double min_gap = 0.0;
    double mean_gap = 0.0;
    std::size_t pairs = 0;
    double worst_x = 0.0;
    double worst_slope = 0.0;
};

/// Fenchel-Young gaps with the discrete conjugate. Each x must be a grid node
/// (InvalidArgument); pairs at +∞ nodes are skipped.
GapReport fenchel_young_check(const SampledFn& f, std::span<const std::pair<double, double>> pairs);

} // namespace fenchel
