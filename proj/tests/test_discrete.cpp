#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "fenchel/discrete.hpp"
#include "support/oracles.hpp"

using namespace fenchel;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <typename F>
ErrorCode error_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no exception";
    return ErrorCode::ParseError;
}

/// Nodes k·h for k in [lo_k, hi_k], so x = 0 and ±x are exact nodes.
Grid1D node_grid(long lo_k, long hi_k, double h) {
    std::vector<double> xs;
    for (long k = lo_k; k <= hi_k; ++k) xs.push_back(static_cast<double>(k) * h);
    return Grid1D(std::move(xs));
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> sorted_slopes(oracle::Rng& rng, std::size_t m, double lo, double hi) {
    std::vector<double> s(m);
    for (double& v : s) v = rng.uniform(lo, hi);
    std::sort(s.begin(), s.end());
    return s;
}

/// Random samples: increasing nodes, values finite or +∞ with at least one finite.
SampledFn random_samples(oracle::Rng& rng, bool integers) {
    const std::size_t n = rng.index(2, 60);
    std::vector<double> xs;
    double x = rng.uniform(-5, 0);
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(integers ? std::round(x * 4) : x);
        x += rng.uniform(0.05, 0.6);
    }
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    if (xs.size() < 2) xs.push_back(xs.back() + 1);
    std::vector<double> fs(xs.size());
    for (double& f : fs) {
        if (rng.coin(0.2)) {
            f = kInf;
        } else {
            f = integers ? static_cast<double>(static_cast<long>(rng.index(0, 40)) - 20) : rng.uniform(-10, 10);
        }
    }
    fs[rng.index(0, fs.size() - 1)] = integers ? 3.0 : rng.uniform(-10, 10);
    return SampledFn(Grid1D(std::move(xs)), std::move(fs));
}

} // namespace

TEST(Grid1D, Validation) {
    EXPECT_EQ(error_of([] { Grid1D({1.0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([] { Grid1D({0.0, 0.0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([] { Grid1D({1.0, 0.0}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([] { Grid1D({0.0, kInf}); }), ErrorCode::InvalidArgument);
    const Grid1D g = Grid1D::uniform(-1, 1, 5);
    EXPECT_EQ(g.size(), 5u);
    EXPECT_EQ(g[0], -1.0);
    EXPECT_EQ(g[4], 1.0);
    EXPECT_DOUBLE_EQ(g.max_spacing(), 0.5);
    EXPECT_EQ(Grid1D::with_step(0, 1, 0.25).size(), 5u);
}

TEST(SampledFn, Validation) {
    const Grid1D g({0.0, 1.0});
    EXPECT_EQ(error_of([&] { SampledFn(g, {0.0}); }), ErrorCode::DimMismatch);
    EXPECT_EQ(error_of([&] { SampledFn(g, {0.0, std::nan("")}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([&] { SampledFn(g, {0.0, -kInf}); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(error_of([&] { SampledFn(g, {kInf, kInf}); }), ErrorCode::AllInfinite);
    EXPECT_NO_THROW(SampledFn(g, {kInf, 2.0}));
}

TEST(LogFamily, ValuesAndDomains) {
    EXPECT_EQ(log_family_eval({LogKind::F1}, 2.0), 2.0);
    EXPECT_DOUBLE_EQ(log_family_eval({LogKind::F2}, 1.0), -0.5);
    EXPECT_EQ(log_family_eval({LogKind::F2}, 0.0), kInf);
    EXPECT_EQ(log_family_eval({LogKind::F2Reflected}, 1.0), kInf);
    EXPECT_DOUBLE_EQ(log_family_eval({LogKind::F2Reflected}, -1.0), -0.5);
    EXPECT_EQ(log_family_eval({LogKind::F3}, 0.0), 0.0);
    EXPECT_EQ(log_family_eval({LogKind::F3}, -0.1), kInf);
    EXPECT_EQ(log_family_eval({LogKind::F3Reflected}, 0.1), kInf);
    EXPECT_DOUBLE_EQ(log_family_eval({LogKind::F4, 2.0}, 1.0), 0.25);
    EXPECT_DOUBLE_EQ(log_family_eval({LogKind::F4, 2.0}, -1.0), 1.0);
    EXPECT_EQ(error_of([] { log_family_eval({LogKind::F4, 0.0}, 1.0); }), ErrorCode::InvalidArgument);
    EXPECT_EQ(to_string(LogKind::F2Reflected), "f2_reflected");
}

TEST(BruteConjugate, SmallExamples) {
    const SampledFn f(Grid1D({-1.0, 0.0, 1.0}), {1.0, 0.0, 1.0});
    const std::vector<double> s = {0.0, 2.0};
    const auto v = brute_conjugate_values(f, s);
    EXPECT_EQ(v[0], 0.0);
    EXPECT_EQ(v[1], 1.0);
    const SampledFn inf_mid(Grid1D({-1.0, 0.0, 1.0}), {0.0, kInf, 0.0});
    const std::vector<double> zero = {0.0};
    EXPECT_EQ(brute_conjugate_values(inf_mid, zero)[0], 0.0);
}

TEST(LowerHull, DropsNonConvexAndCollinearNodes) {
    const SampledFn bump(Grid1D({-1.0, 0.0, 1.0}), {0.0, 5.0, 0.0});
    EXPECT_EQ(lower_hull(bump), (std::vector<std::size_t>{0, 2}));
    const SampledFn line(Grid1D({0.0, 1.0, 2.0, 3.0}), {0.0, 1.0, 2.0, 3.0});
    EXPECT_EQ(lower_hull(line), (std::vector<std::size_t>{0, 3}));
    const SampledFn holes(Grid1D({0.0, 1.0, 2.0}), {kInf, 1.0, kInf});
    EXPECT_EQ(lower_hull(holes), (std::vector<std::size_t>{1}));
}

TEST(FastConjugate, NonConvexTripleMatchesBrute) {
    const SampledFn bump(Grid1D({-1.0, 0.0, 1.0}), {0.0, 5.0, 0.0});
    const std::vector<double> s = {-2.0, -0.5, 0.0, 0.5, 2.0};
    EXPECT_TRUE(bitwise_equal(fast_conjugate_values(bump, s), brute_conjugate_values(bump, s)));
}

TEST(FastConjugate, RejectsUnsortedSlopes) {
    const SampledFn f(Grid1D({0.0, 1.0}), {0.0, 0.0});
    const std::vector<double> s = {1.0, 0.0};
    EXPECT_EQ(error_of([&] { fast_conjugate_values(f, s); }), ErrorCode::InvalidArgument);
}

TEST(FastConjugate, SignedZeroIsNormalized) {
    const SampledFn f(Grid1D({-1.0, 0.0}), {0.0, 0.0});
    const std::vector<double> s = {0.0};
    const double v = fast_conjugate_values(f, s)[0];
    EXPECT_EQ(v, 0.0);
    EXPECT_FALSE(std::signbit(v));
}

TEST(ConjugateProperty, FastEqualsBruteBitwise) {
    oracle::Rng rng(200);
    for (int trial = 0; trial < 1000; ++trial) {
        const bool ints = trial % 3 == 0;
        const SampledFn f = random_samples(rng, ints);
        std::vector<double> s = sorted_slopes(rng, rng.index(1, 80), -12, 12);
        if (ints) {
            for (double& v : s) v = std::round(v);
        }
        const auto fast = fast_conjugate_values(f, s);
        const auto brute = brute_conjugate_values(f, s);
        ASSERT_TRUE(bitwise_equal(fast, brute)) << "trial " << trial;
    }
}

TEST(ConjugateProperty, BruteMatchesIndependentSup) {
    oracle::Rng rng(201);
    for (int trial = 0; trial < 300; ++trial) {
        const SampledFn f = random_samples(rng, false);
        const std::vector<double> xs(f.grid().points().begin(), f.grid().points().end());
        const std::vector<double> fs(f.values().begin(), f.values().end());
        const std::vector<double> s = sorted_slopes(rng, 20, -10, 10);
        const auto v = brute_conjugate_values(f, s);
        for (std::size_t k = 0; k < s.size(); ++k) ASSERT_NEAR(v[k], oracle::grid_sup(xs, fs, s[k]), 1e-12);
    }
}

TEST(ConjugateProperty, ConjugateIsConvexInSlope) {
    oracle::Rng rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        const SampledFn f = random_samples(rng, false);
        const std::vector<double> s = sorted_slopes(rng, 40, -10, 10);
        const auto v = fast_conjugate_values(f, s);
        for (std::size_t k = 1; k + 1 < s.size(); ++k) {
            const double d1 = s[k] - s[k - 1], d2 = s[k + 1] - s[k];
            if (d1 < 1e-6 || d2 < 1e-6) continue;
            const double second = (v[k + 1] - v[k]) / d2 - (v[k] - v[k - 1]) / d1;
            ASSERT_GE(second, -1e-7 * (1.0 + std::abs(v[k])) / std::min(d1, d2));
        }
    }
}

TEST(ConjugateProperty, OrderReversal) {
    oracle::Rng rng(203);
    for (int trial = 0; trial < 200; ++trial) {
        const SampledFn f = random_samples(rng, false);
        std::vector<double> gv(f.values().begin(), f.values().end());
        for (double& v : gv) {
            if (std::isfinite(v) && rng.coin(0.7)) v += rng.uniform(0.0, 3.0);
        }
        const SampledFn g(f.grid(), gv);
        const std::vector<double> s = sorted_slopes(rng, 30, -10, 10);
        const auto fs = fast_conjugate_values(f, s);
        const auto gs = fast_conjugate_values(g, s);
        for (std::size_t k = 0; k < s.size(); ++k) ASSERT_GE(fs[k], gs[k]);
    }
}

TEST(ConjugateProperty, ReflectionIsExact) {
    oracle::Rng rng(204);
    for (int trial = 0; trial < 200; ++trial) {
        const long n = static_cast<long>(rng.index(1, 40));
        const double h = rng.uniform(0.01, 0.5);
        const Grid1D g = node_grid(-n, n, h);
        std::vector<double> fv(g.size()), rv(g.size());
        for (double& v : fv) v = rng.coin(0.15) ? kInf : rng.uniform(-5, 5);
        fv[static_cast<std::size_t>(n)] = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) rv[i] = fv[g.size() - 1 - i];
        const std::vector<double> s = sorted_slopes(rng, 25, -8, 8);
        std::vector<double> neg(s.rbegin(), s.rend());
        for (double& v : neg) v = -v;
        const auto reflected = fast_conjugate_values(SampledFn(g, rv), s);
        auto direct = fast_conjugate_values(SampledFn(g, fv), neg);
        std::reverse(direct.begin(), direct.end());
        ASSERT_TRUE(bitwise_equal(reflected, direct));
    }
}

TEST(Biconjugate, ConvexDataIsFixed) {
    const Grid1D g = node_grid(-20, 20, 0.1);
    const SampledFn f = SampledFn::sample(g, [](double x) { return 0.5 * x * x + std::exp(0.3 * x); });
    const SampledFn ff = biconjugate(f);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(ff.value(i), f.value(i), 1e-12);
}

TEST(Biconjugate, HullOfBumpAndDomain) {
    const SampledFn bump(Grid1D({-2.0, -1.0, 0.0, 1.0, 2.0}), {kInf, 0.0, 5.0, 0.0, kInf});
    const SampledFn ff = biconjugate(bump);
    EXPECT_EQ(ff.value(0), kInf);
    EXPECT_EQ(ff.value(2), 0.0);
    EXPECT_EQ(ff.value(4), kInf);
}

TEST(BiconjugateProperty, BelowIdempotentConvex) {
    oracle::Rng rng(205);
    for (int trial = 0; trial < 200; ++trial) {
        const SampledFn f = random_samples(rng, false);
        const SampledFn ff = biconjugate(f);
        const SampledFn fff = biconjugate(ff);
        for (std::size_t i = 0; i < f.size(); ++i) {
            ASSERT_LE(ff.value(i), f.value(i));
            if (std::isinf(ff.value(i))) {
                ASSERT_TRUE(std::isinf(fff.value(i)));
            } else {
                ASSERT_NEAR(fff.value(i), ff.value(i), 1e-9 * (1.0 + std::abs(ff.value(i))));
            }
        }
        for (std::size_t i = 1; i + 1 < f.size(); ++i) {
            const double a = ff.value(i - 1), b = ff.value(i), c = ff.value(i + 1);
            if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) continue;
            const double l = f.x(i) - f.x(i - 1), r = f.x(i + 1) - f.x(i);
            ASSERT_GE((c - b) / r - (b - a) / l, -1e-7);
        }
    }
}

TEST(GridFixedPoint, EnergyUnderNegation) {
    const double h = 0.01;
    const SampledFn f = SampledFn::sample(node_grid(-600, 600, h), [](double x) { return 0.5 * x * x; });
    const TransformParams neg(Matrix{{-1.0}}, Vector{0.0}, Vector{0.0}, 1.0, 0.0);
    GridCheckOptions opts;
    opts.window = {{-5.0, 5.0}};
    const GridResidual r = grid_fixed_point_residual(neg, f, opts);
    EXPECT_NEAR(r.h, h, 1e-12);
    EXPECT_LE(r.residual.max_abs, 2 * h);
    EXPECT_EQ(r.residual.sample_points, 1001u);
}

TEST(GridFixedPoint, RequiresOneDimension) {
    const SampledFn f(Grid1D({0.0, 1.0}), {0.0, 0.0});
    EXPECT_EQ(error_of([&] { grid_fixed_point_residual(TransformParams::identity(2), f); }), ErrorCode::DimMismatch);
}

TEST(LogFamilyConjugates, PointValues) {
    const double h = 0.005;
    const SampledFn f4 = SampledFn::sample(node_grid(-2200, 2200, h), [](double x) {
        return log_family_eval({LogKind::F4, 2.0}, x);
    });
    const std::vector<double> s = {-1.0};
    EXPECT_NEAR(brute_conjugate_values(f4, s)[0], 0.25, h);

    const SampledFn f2 = SampledFn::sample(node_grid(-1200, 5200, h), [](double x) {
        return log_family_eval({LogKind::F2}, x);
    });
    EXPECT_NEAR(brute_conjugate_values(f2, s)[0], -0.5, 2 * h);
}

TEST(LogFamilyConjugates, EveryMemberSolvesNegationEquation) {
    const double h = 0.005;
    const TransformParams neg(Matrix{{-1.0}}, Vector{0.0}, Vector{0.0}, 1.0, 0.0);
    const std::vector<LogFamilyMember> members = {{LogKind::F1},          {LogKind::F2},     {LogKind::F2Reflected},
                                                  {LogKind::F3},          {LogKind::F3Reflected}, {LogKind::F4, 0.5},
                                                  {LogKind::F4, 2.0}};
    for (const LogFamilyMember& m : members) {
        const double reach = 5.0 * (m.kind == LogKind::F4 ? std::max(m.lambda, 1.0 / m.lambda) : 1.0) + 1.0;
        long lo = -static_cast<long>(std::ceil(reach / h)), hi = -lo;
        if (m.kind == LogKind::F2) hi = static_cast<long>(std::ceil(26.0 / h));
        if (m.kind == LogKind::F2Reflected) lo = -static_cast<long>(std::ceil(26.0 / h));
        const SampledFn f = SampledFn::sample(node_grid(lo, hi, h), [&](double x) { return log_family_eval(m, x); });
        GridCheckOptions opts;
        opts.window = {{-5.0, 5.0}};
        const bool f2 = m.kind == LogKind::F2 || m.kind == LogKind::F2Reflected;
        if (f2) opts.boundary_exclusion = 10 * h;
        const GridResidual r = grid_fixed_point_residual(neg, f, opts);
        EXPECT_LE(r.residual.max_abs, (f2 ? 4 : 2) * h) << to_string(m.kind) << " " << m.lambda;
    }
}

TEST(Conjugate2D, EnergyAndDiagonal) {
    const double h = 0.1;
    const Grid1D g = node_grid(-50, 50, h);
    const Grid1D s = node_grid(-20, 20, h);
    const SampledFn2D e = SampledFn2D::sample(g, g, [](double x, double y) { return 0.5 * (x * x + y * y); });
    const SampledFn2D es = conjugate_2d_brute(e, s, s);
    const SampledFn2D d = SampledFn2D::sample(g, g, [](double x, double y) { return x * x + 0.25 * y * y; });
    const SampledFn2D ds = conjugate_2d_brute(d, s, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double a = s[i], b = s[j];
            ASSERT_NEAR(es.value(i, j), 0.5 * (a * a + b * b), 2 * h);
            ASSERT_NEAR(ds.value(i, j), 0.25 * a * a + b * b, 2 * h);
        }
    }
}

TEST(Conjugate2D, QuadrantIndicator) {
    const Grid1D g = node_grid(-10, 10, 0.5);
    const SampledFn2D ind = SampledFn2D::sample(g, g, [](double x, double y) { return x >= 0 && y >= 0 ? 0.0 : kInf; });
    const Grid1D s = node_grid(-4, 4, 0.5);
    const SampledFn2D c = conjugate_2d_brute(ind, s, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double want = 5.0 * (std::max(s[i], 0.0) + std::max(s[j], 0.0));
            ASSERT_EQ(c.value(i, j), want);
        }
    }
}

TEST(Conjugate2D, DirectSumSolvesNegationEquation) {
    const double h = 0.1;
    const Grid1D g = node_grid(-50, 50, h);
    const LogFamilyMember f4{LogKind::F4, 2.0};
    const SampledFn2D f = SampledFn2D::sample(g, g, [&](double x, double y) {
        return log_family_eval({LogKind::F1}, x) + log_family_eval(f4, y);
    });
    const Grid1D s = node_grid(-20, 20, h);
    const SampledFn2D fs = conjugate_2d_brute(f, s, s);
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double fx = log_family_eval({LogKind::F1}, s[i]) + log_family_eval(f4, s[j]);
            ASSERT_NEAR(fx, fs.value(n - 1 - i, n - 1 - j), 2 * h);
        }
    }
}

TEST(Conjugate2D, AxisLimit) {
    const Grid1D big = Grid1D::uniform(-1, 1, 102);
    const Grid1D ok = Grid1D::uniform(-1, 1, 3);
    const SampledFn2D f = SampledFn2D::sample(big, ok, [](double, double) { return 0.0; });
    EXPECT_EQ(error_of([&] { conjugate_2d_brute(f, ok, ok); }), ErrorCode::InvalidArgument);
}

TEST(FenchelYoung, EqualityPairsAndGaps) {
    const double h = 0.01;
    const SampledFn f = SampledFn::sample(node_grid(-400, 400, h), [](double x) { return 0.5 * x * x; });
    std::vector<std::pair<double, double>> eq;
    for (long k = -200; k <= 200; k += 25) eq.emplace_back(k * h, k * h);
    const GapReport r = fenchel_young_check(f, eq);
    EXPECT_EQ(r.pairs, eq.size());
    EXPECT_GE(r.min_gap, -1e-12);
    EXPECT_LE(r.mean_gap, 2 * h);

    const std::vector<std::pair<double, double>> off = {{0.0, 1.0}};
    EXPECT_NEAR(fenchel_young_check(f, off).min_gap, 0.5, 1e-12);
    const std::vector<std::pair<double, double>> bad = {{0.005, 1.0}};
    EXPECT_EQ(error_of([&] { fenchel_young_check(f, bad); }), ErrorCode::InvalidArgument);
}

TEST(FenchelYoungProperty, GapsAreNonNegative) {
    oracle::Rng rng(206);
    for (int trial = 0; trial < 200; ++trial) {
        const SampledFn f = random_samples(rng, false);
        std::vector<std::pair<double, double>> pairs;
        for (int k = 0; k < 10; ++k) pairs.emplace_back(f.x(rng.index(0, f.size() - 1)), rng.uniform(-10, 10));
        bool any_finite = false;
        for (const auto& [x, s] : pairs) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (f.x(i) == x && std::isfinite(f.value(i))) any_finite = true;
            }
        }
        if (!any_finite) {
            EXPECT_EQ(error_of([&] { fenchel_young_check(f, pairs); }), ErrorCode::AllInfinite);
            continue;
        }
        ASSERT_GE(fenchel_young_check(f, pairs).min_gap, -1e-12);
    }
}
