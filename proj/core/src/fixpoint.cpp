#include "fenchel/fixpoint.hpp"

#include "fenchel/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace fenchel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

bool is_positive_definite(const Matrix& E, const Tolerances& tol) {
    if (!is_symmetric(E, tol)) return false;
    return definiteness(SymMatrix::symmetrize(E), tol) == Definiteness::PositiveDefinite;
}

bool is_positive_semidefinite(const Matrix& E, const Tolerances& tol) {
    if (!is_symmetric(E, tol)) return false;
    const Definiteness d = definiteness(SymMatrix::symmetrize(E), tol);
    return d == Definiteness::PositiveDefinite || d == Definiteness::PositiveSemidefinite;
}

SymMatrix require_pd_inverse(const SymMatrix& A, const Tolerances& tol, const char* what) {
    const Spectral s = eigendecompose(A);
    if (definiteness(s, tol) != Definiteness::PositiveDefinite) {
        throw Error(ErrorCode::NotPositiveDefinite, std::string(what) + ": leading coefficient is not positive definite");
    }
    return s.apply([](double d) { return 1.0 / d; });
}

bool near_zero(const Vector& v, double tol) { return v.max_abs() <= tol; }

} // namespace

double side_gap(double lhs, double rhs) noexcept {
    if (lhs == kInf && rhs == kInf) return 0.0;
    return std::abs(lhs - rhs);
}

ResidualReport residual_scan(std::span<const Vector> points, const std::function<double(const Vector&)>& residual) {
    if (points.empty()) throw Error(ErrorCode::InvalidArgument, "residual scan over an empty point set");
    std::vector<double> values(points.size());
    std::size_t worst = 0;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double r = std::abs(residual(points[k]));
        values[k] = std::isnan(r) ? kInf : r;
        if (values[k] > values[worst]) worst = k;
    }
    ResidualReport rep;
    rep.max_abs = values[worst];
    rep.mean_abs = pairwise_sum(values) / static_cast<double>(values.size());
    rep.sample_points = points.size();
    rep.worst_point = points[worst];
    return rep;
}

std::string_view to_string(ClassificationTag tag) noexcept {
    switch (tag) {
    case ClassificationTag::UniqueAllFunctions: return "UniqueAllFunctions";
    case ClassificationTag::UniqueInQuadraticInvertibleClass: return "UniqueInQuadraticInvertibleClass";
    case ClassificationTag::UniqueInC2Class: return "UniqueInC2Class";
    case ClassificationTag::QuadraticSolutionExists: return "QuadraticSolutionExists";
    case ClassificationTag::NoSolution: return "NoSolution";
    case ClassificationTag::NoQuadraticSolutionInConstruction: return "NoQuadraticSolutionInConstruction";
    case ClassificationTag::Undetermined: return "Undetermined";
    }
    return "Unknown";
}

std::string_view to_string(FunctionalVariant v) noexcept {
    switch (v) {
    case FunctionalVariant::Tsquared: return "Tsquared";
    case FunctionalVariant::General: return "General";
    case FunctionalVariant::SelfAdjoint: return "SelfAdjoint";
    }
    return "Unknown";
}

QuadraticFn solve_positive_definite(const TransformParams& p, const Tolerances& tol) {
    if (!is_positive_definite(p.E(), tol)) {
        throw Error(ErrorCode::NotPositiveDefinite, "solve_positive_definite: E is not symmetric positive definite");
    }
    const double rt = std::sqrt(p.tau());
    const double onep = 1.0 + rt;
    const Vector diff = p.c() - p.w();
    const double quad = dot(diff, p.E_inverse() * diff);

    QuadraticFn f;
    f.A = SymMatrix::symmetrize(rt * p.E());
    f.b = (p.w() + rt * p.c()) / onep;
    f.gamma = (p.beta() * onep * onep + 0.5 * rt * quad) / (onep * onep * (p.tau() + 1.0));
    return f;
}

SelfAdjointResult solve_self_adjoint(const TransformParams& p, const Tolerances& tol) {
    const SymMatrix E(p.E(), tol);
    const Spectral s = eigendecompose(E);
    const double cutoff = tol.sing * s.max_abs_eigenvalue();
    for (double d : s.eigenvalues) {
        if (std::abs(d) <= cutoff) throw Error(ErrorCode::Singular, "solve_self_adjoint: E has a zero eigenvalue");
    }
    const double tau = p.tau();
    const double rt = std::sqrt(tau);

    const SymMatrix A = s.apply([rt](double d) { return rt * std::abs(d); });
    const SymMatrix A_inv = s.apply([rt](double d) { return 1.0 / (rt * std::abs(d)); });
    // τ·E·A⁻¹ = √τ·U·sign(D)·Uᵀ
    const SymMatrix K = s.apply([rt](double d) { return d > 0.0 ? rt : -rt; });
    const SymMatrix M = SymMatrix::symmetrize(K.matrix() + Matrix::identity(p.dim()));
    const Vector rhs = p.w() + K.matrix() * p.c();

    const auto b = solve_min_norm(M, rhs, tol);
    if (!b) {
        // Distance of rhs from the range of M.
        const Spectral ms = eigendecompose(M);
        const double mcut = tol.sing * ms.max_abs_eigenvalue();
        double r2 = 0.0;
        for (std::size_t k = 0; k < ms.eigenvalues.size(); ++k) {
            if (std::abs(ms.eigenvalues[k]) > mcut) continue;
            const double proj = dot(ms.U.column(k), rhs);
            r2 += proj * proj;
        }
        return ConstructionFailure{std::sqrt(r2), "(tau*E*A^-1 + I) b = w + tau*E*A^-1 c is inconsistent"};
    }
    const Vector d = p.c() - *b;
    QuadraticFn f;
    f.A = A;
    f.b = *b;
    f.gamma = (p.beta() + 0.5 * tau * dot(d, A_inv.matrix() * d)) / (tau + 1.0);
    return f;
}

ResidualReport verify_form_quadratic(const TransformParams& p, const QuadraticFn& q, const Tolerances& tol) {
    if (q.dim() != p.dim()) throw Error(ErrorCode::DimMismatch, "verify_form_quadratic");
    const SymMatrix A_inv = invert(q.A, tol);
    const double tau = p.tau();
    const double rt = std::sqrt(tau);
    const std::size_t n = p.dim();
    const Matrix I = Matrix::identity(n);
    const Matrix Et = p.E().transpose();
    const Matrix K = tau * (Et * A_inv.matrix());

    std::vector<double> r;
    r.push_back(max_abs_diff(q.A.matrix(), K * p.E()));
    r.push_back(((K + I) * q.b - p.w() - K * p.c()).max_abs());
    const Vector d = p.c() - q.b;
    r.push_back(std::abs(q.gamma - (p.beta() + 0.5 * tau * dot(d, A_inv.matrix() * d)) / (tau + 1.0)));
    if (is_symmetric(p.E(), tol)) {
        const Matrix S = rt * (A_inv.matrix() * p.E());
        r.push_back(max_abs_diff(S * S, I));
        const Matrix T = (1.0 / rt) * (p.E_inverse() * q.A.matrix());
        r.push_back(max_abs_diff(T * T, I));
    }

    ResidualReport rep;
    rep.max_abs = *std::max_element(r.begin(), r.end());
    double sum = 0.0;
    for (double x : r) sum += x;
    rep.mean_abs = sum / static_cast<double>(r.size());
    rep.sample_points = r.size();
    rep.worst_point = Vector(std::move(r));
    return rep;
}

Classification classify(const TransformParams& p, const Tolerances& tol, const std::optional<QuadraticFn>& candidate,
                        const ScanOptions& scan) {
    Classification out;
    const std::size_t n = p.dim();
    const bool symmetric = is_symmetric(p.E(), tol);
    const bool pd = symmetric && is_positive_definite(p.E(), tol);
    const bool tau_one = std::abs(p.tau() - 1.0) <= tol.param;

    if (pd) {
        out.solution = solve_positive_definite(p, tol);
        const double scale = std::max(1.0, std::max(p.c().max_abs(), p.w().max_abs()));
        if (tau_one && near_zero(p.c() - p.w(), tol.param * scale)) {
            out.tag = ClassificationTag::UniqueAllFunctions;
            out.note = "E positive definite, tau = 1, c = w: the quadratic solution is the only solution";
        } else if (!tau_one) {
            out.tag = ClassificationTag::UniqueInC2Class;
            out.x0 = (p.E_inverse() * p.w() - p.E_inverse() * p.c()) / (1.0 - p.tau());
            out.note = "E positive definite, tau != 1: unique among functions twice differentiable with second "
                       "derivative continuous at x0";
        } else {
            out.tag = ClassificationTag::UniqueInQuadraticInvertibleClass;
            out.note = "E positive definite: unique among quadratics with invertible leading coefficient";
        }
        return out;
    }

    const bool minus_identity = max_abs_diff(p.E(), -1.0 * Matrix::identity(n)) <= tol.param;
    if (minus_identity && tau_one && std::abs(p.beta()) <= tol.param) {
        const bool c_zero = near_zero(p.c(), tol.param);
        const bool w_zero = near_zero(p.w(), tol.param);
        if (c_zero && !w_zero) {
            out.tag = ClassificationTag::NoSolution;
            out.note = "f(x) = f*(-x) + <w,x> with w != 0 has no solution";
            return out;
        }
        if (w_zero && !c_zero) {
            out.tag = ClassificationTag::NoSolution;
            out.note = "f(x) = f*(-x + c) with c != 0 has no solution";
            return out;
        }
    }

    if (symmetric) {
        auto built = solve_self_adjoint(p, tol);
        if (auto* f = std::get_if<QuadraticFn>(&built)) {
            out.tag = ClassificationTag::QuadraticSolutionExists;
            out.solution = std::move(*f);
            out.note = "quadratic solution from |E|; not unique in general";
        } else {
            out.tag = ClassificationTag::NoQuadraticSolutionInConstruction;
            out.note = std::get<ConstructionFailure>(built).reason;
        }
        return out;
    }

    out.tag = ClassificationTag::Undetermined;
    out.note = "E is not symmetric; no decision procedure";
    if (candidate) {
        if (is_strictly_convex(*candidate, tol) && candidate->dim() == n) {
            const auto pts = sample_box(n, scan.points, scan.seed, scan.radius);
            out.candidate_scan = transform_residual(p, *candidate, pts, tol);
            out.note += "; candidate scanned";
        } else {
            out.note += "; candidate skipped (leading coefficient not positive definite)";
        }
    }
    return out;
}

ResidualReport transform_residual(const TransformParams& p, const QuadraticFn& q, std::span<const Vector> points,
                                  const Tolerances& tol) {
    const QuadraticFn tq = apply_transform(p, q, tol);
    return residual_scan(points, [&](const Vector& x) { return eval(q, x) - eval(tq, x); });
}

ResidualReport functional_eq_residual(const TransformParams& p, const ScalarFunction& f, FunctionalVariant variant,
                                      std::span<const Vector> points, const Tolerances& tol) {
    for (const auto& x : points) {
        if (x.dim() != p.dim()) throw Error(ErrorCode::DimMismatch, "functional_eq_residual point");
    }
    const double tau = p.tau();
    const double beta_term = p.beta() * (1.0 - tau);
    const Matrix& Einv = p.E_inverse();
    const Vector Einv_c = Einv * p.c();
    const Vector shift = Einv * p.w() - Einv_c;

    switch (variant) {
    case FunctionalVariant::Tsquared: {
        const Matrix EinvT = Einv.transpose();
        const Vector lin = p.w() - tau * (p.E().transpose() * Einv_c);
        const double constant = tau * dot(p.w(), Einv_c) - tau * dot(Einv_c, p.c()) + beta_term;
        return residual_scan(points, [&](const Vector& x) {
            const Vector arg = (1.0 / tau) * (EinvT * (p.E() * x + p.c() - p.w()));
            return side_gap(f(x), tau * tau * f(arg) + dot(lin, x) + constant);
        });
    }
    case FunctionalVariant::General: {
        const Matrix lin_map = tau * (Einv * p.E().transpose());
        return residual_scan(points, [&](const Vector& x) {
            const Vector y = lin_map * x + shift;
            return side_gap(f(y), tau * tau * f(x) + dot(p.w(), y) - tau * tau * dot(p.c(), x) + beta_term);
        });
    }
    case FunctionalVariant::SelfAdjoint: {
        if (!is_symmetric(p.E(), tol)) throw Error(ErrorCode::NotSymmetric, "SelfAdjoint variant needs symmetric E");
        return residual_scan(points, [&](const Vector& x) {
            const Vector y = tau * x + shift;
            return side_gap(f(y), tau * tau * f(x) + dot(p.w(), y) - tau * tau * dot(p.c(), x) + beta_term);
        });
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown functional variant");
}

ResidualReport shift_equation_residual(const std::function<double(double)>& f, double w,
                                       std::span<const double> points) {
    std::vector<Vector> pts;
    pts.reserve(points.size());
    for (double x : points) pts.push_back(Vector{x});
    return residual_scan(pts, [&](const Vector& x) { return side_gap(f(x[0]), f(x[0] + w) + w * x[0]); });
}

QuadraticFn lower_envelope(const TransformParams& p) {
    const double tau = p.tau();
    QuadraticFn q;
    q.A = SymMatrix::symmetrize((2.0 * tau / (tau + 1.0)) * p.E());
    q.b = (p.w() + tau * p.c()) / (tau + 1.0);
    q.gamma = p.beta() / (tau + 1.0);
    return q;
}

QuadraticFn upper_envelope(const TransformParams& p, const Tolerances& tol) {
    if (!is_symmetric(p.E(), tol)) throw Error(ErrorCode::NotPSD, "upper_envelope: E is not symmetric");
    const Definiteness d = definiteness(SymMatrix::symmetrize(p.E()), tol);
    if (d == Definiteness::PositiveSemidefinite) throw Error(ErrorCode::Singular, "upper_envelope: E is singular");
    if (d != Definiteness::PositiveDefinite) throw Error(ErrorCode::NotPSD, "upper_envelope: E is not PSD");
    // f* <= (lower)* by order reversal, hence f = T f <= T(lower).
    return apply_transform(p, lower_envelope(p), tol);
}

ResidualReport g_scaling_residual(const TransformParams& p, const ScalarFunction& f, const ScalarFunction& other,
                                  std::span<const Vector> points, const Tolerances& tol) {
    if (!is_positive_semidefinite(p.E(), tol)) throw Error(ErrorCode::NotPSD, "g_scaling_residual: E is not PSD");
    const double tau = p.tau();
    const Vector shift = p.E_inverse() * (p.w() - p.c());
    return residual_scan(points, [&](const Vector& x) {
        const Vector y = tau * x + shift;
        return (f(y) - other(y)) - tau * tau * (f(x) - other(x));
    });
}

SymMatrix solve_LQL(const SymMatrix& L, const Tolerances& tol) { return require_pd_inverse(L, tol, "solve_LQL"); }

double lql_residual(const Matrix& L, const Matrix& Q) { return max_abs_diff(L * Q * L, invert(Q)); }

ResidualReport check_involution_psd(const SymMatrix& Q, const Tolerances& tol) {
    const Definiteness d = definiteness(Q, tol);
    if (d != Definiteness::PositiveDefinite && d != Definiteness::PositiveSemidefinite) {
        throw Error(ErrorCode::NotPSD, "check_involution_psd");
    }
    const std::size_t n = Q.size();
    const Matrix I = Matrix::identity(n);
    const double sq = max_abs_diff(Q.matrix() * Q.matrix(), I);
    if (sq > 1e-8) throw Error(ErrorCode::NotInvolution, "||Q^2 - I|| = " + std::to_string(sq));

    ResidualReport rep;
    rep.sample_points = n * n;
    rep.worst_point = Vector{0.0, 0.0};
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double dev = std::abs(Q(i, j) - I(i, j));
            sum += dev;
            if (dev > rep.max_abs) {
                rep.max_abs = dev;
                rep.worst_point = Vector{static_cast<double>(i), static_cast<double>(j)};
            }
        }
    rep.mean_abs = sum / static_cast<double>(n * n);
    return rep;
}

ResidualReport functional_differential_residual(const TransformParams& p, const QuadraticFn& q,
                                                std::span<const Vector> points, const Tolerances& tol) {
    if (q.dim() != p.dim()) throw Error(ErrorCode::DimMismatch, "functional_differential_residual");
    const SymMatrix A_inv = require_pd_inverse(q.A, tol, "functional_differential_residual");
    return residual_scan(points, [&](const Vector& x) {
        const Vector y = p.E() * x + p.c();
        const Vector u = A_inv.matrix() * (y - q.b);
        return eval(q, x) - (p.tau() * (dot(y, u) - eval(q, u)) + dot(p.w(), x) + p.beta());
    });
}

QuadraticFn skew_solution(const SymMatrix& B, const Tolerances& tol) {
    if (B.size() != 2) throw Error(ErrorCode::DimMismatch, "skew_solution needs a 2x2 matrix");
    const Definiteness d = definiteness(B, tol);
    if (d != Definiteness::PositiveDefinite && d != Definiteness::PositiveSemidefinite) {
        throw Error(ErrorCode::NotPSD, "skew_solution: B is not PSD");
    }
    const double det = determinant(B.matrix());
    if (std::abs(det - 1.0) > 1e-9) throw Error(ErrorCode::BadDeterminant, "det B = " + std::to_string(det));
    return {B, Vector::zeros(2), 0.0};
}

TransformParams rotation_params(std::size_t blocks) {
    if (blocks == 0) throw Error(ErrorCode::InvalidArgument, "rotation_params needs at least one block");
    const std::size_t n = 2 * blocks;
    Matrix E(n);
    for (std::size_t k = 0; k < blocks; ++k) {
        E(2 * k, 2 * k + 1) = 1.0;
        E(2 * k + 1, 2 * k) = -1.0;
    }
    return {std::move(E), Vector::zeros(n), Vector::zeros(n), 1.0, 0.0};
}

} // namespace fenchel
