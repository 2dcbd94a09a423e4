#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fenchel/quadratic.hpp"

namespace fenchel {

/// Numerical evidence for one equation check.
struct ResidualReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    std::size_t sample_points = 0;
    /// Point where max_abs was attained. Matrix and coefficient checks that
    /// have no sample point document what they store here instead.
    Vector worst_point;
};

/// |residual(x)| over the points; mean by pairwise summation. Both sides of an
/// identity being +∞ count as agreement (see side_gap). Throws InvalidArgument
/// on an empty point set.
ResidualReport residual_scan(std::span<const Vector> points, const std::function<double(const Vector&)>& residual);

/// |lhs - rhs| with +∞ == +∞.
double side_gap(double lhs, double rhs) noexcept;

enum class ClassificationTag {
    UniqueAllFunctions,
    UniqueInQuadraticInvertibleClass,
    UniqueInC2Class,
    QuadraticSolutionExists,
    NoSolution,
    NoQuadraticSolutionInConstruction,
    Undetermined,
};

std::string_view to_string(ClassificationTag tag) noexcept;

struct Classification {
    ClassificationTag tag = ClassificationTag::Undetermined;
    std::optional<QuadraticFn> solution;
    /// Only for UniqueInC2Class: the point (E⁻¹w − E⁻¹c)/(1 − τ).
    std::optional<Vector> x0;
    std::string note;
    /// Undetermined branch only: transform residual of a caller-supplied candidate.
    std::optional<ResidualReport> candidate_scan;
};

struct ScanOptions {
    std::size_t points = 100;
    std::uint64_t seed = 0;
    double radius = 1.0;
};

/// The self-adjoint construction could not produce b: the linear system for b
/// is inconsistent.
struct ConstructionFailure {
    double system_residual = 0.0;
    std::string reason;
};

using SelfAdjointResult = std::variant<QuadraticFn, ConstructionFailure>;

/// A = √τ·E, b = (w + √τ·c)/(1 + √τ),
/// γ = (β(1+√τ)² + ½√τ⟨c−w, E⁻¹(c−w)⟩) / ((1+√τ)²(τ+1)).
/// Throws NotPositiveDefinite unless E is symmetric positive definite.
QuadraticFn solve_positive_definite(const TransformParams& p, const Tolerances& tol = {});

/// A = √τ·U|D|Uᵀ from E = U·D·Uᵀ, b the minimum-norm solution of
/// (τEA⁻¹ + I)b = w + τEA⁻¹c, γ = (β + ½τ⟨c−b, A⁻¹(c−b)⟩)/(τ+1).
/// Throws NotSymmetric for non-symmetric E.
SelfAdjointResult solve_self_adjoint(const TransformParams& p, const Tolerances& tol = {});

/// Residuals of the coefficient relations a quadratic fixed point satisfies:
///   [0] ‖A − τEᵀA⁻¹E‖_max
///   [1] ‖(τEᵀA⁻¹ + I)b − w − τEᵀA⁻¹c‖_max
///   [2] |γ − (β + ½τ⟨c−b, A⁻¹(c−b)⟩)/(τ+1)|
///   [3] ‖(√τ·A⁻¹E)² − I‖_max
///   [4] ‖(E⁻¹A/√τ)² − I‖_max
/// [3] and [4] follow from [0] only when E is symmetric and are omitted otherwise.
/// worst_point holds the residuals in this order; sample_points is their count.
/// Throws Singular.
ResidualReport verify_form_quadratic(const TransformParams& p, const QuadraticFn& q, const Tolerances& tol = {});

/// Case analysis of the fixed-point equation; see README for the branch order.
Classification classify(const TransformParams& p, const Tolerances& tol = {},
                        const std::optional<QuadraticFn>& candidate = std::nullopt, const ScanOptions& scan = {});

/// max |q(x) − (Tq)(x)| with Tq from apply_transform.
ResidualReport transform_residual(const TransformParams& p, const QuadraticFn& q, std::span<const Vector> points,
                                  const Tolerances& tol = {});

enum class FunctionalVariant {
    /// f(x) = τ²f(τ⁻¹E⁻ᵀ(Ex + c − w)) + ⟨w − τEᵀE⁻¹c, x⟩ + τ⟨w, E⁻¹c⟩ − τ⟨E⁻¹c, c⟩ + β(1−τ)
    Tsquared,
    /// f(y) = τ²f(x) + ⟨w, y⟩ − τ²⟨c, x⟩ + β(1−τ), y = τE⁻¹Eᵀx + E⁻¹w − E⁻¹c
    General,
    /// General with Eᵀ = E, so y = τx + E⁻¹w − E⁻¹c
    SelfAdjoint,
};

std::string_view to_string(FunctionalVariant v) noexcept;

/// Residual of the chosen identity that every fixed point satisfies.
/// SelfAdjoint requires symmetric E (NotSymmetric).
ResidualReport functional_eq_residual(const TransformParams& p, const ScalarFunction& f, FunctionalVariant variant,
                                      std::span<const Vector> points, const Tolerances& tol = {});

/// 1D: f(x) − f(x + w) − w·x.
ResidualReport shift_equation_residual(const std::function<double(double)>& f, double w, std::span<const double> points);

/// Quadratic minorant of every fixed point: Q = 2τ/(τ+1)·E (symmetric part),
/// q = (w + τc)/(τ+1), θ = β/(τ+1).
QuadraticFn lower_envelope(const TransformParams& p);

/// Quadratic majorant for symmetric PSD invertible E: the transform applied to
/// the lower envelope. NotPSD / Singular.
QuadraticFn upper_envelope(const TransformParams& p, const Tolerances& tol = {});

/// Residual of g(τx + E⁻¹w − E⁻¹c) = τ²g(x) for g = f − other.
/// Requires symmetric PSD E (NotPSD otherwise).
ResidualReport g_scaling_residual(const TransformParams& p, const ScalarFunction& f, const ScalarFunction& other,
                                  std::span<const Vector> points, const Tolerances& tol = {});

/// Unique monotone solution Q = L⁻¹ of L·Q·L = Q⁻¹ for symmetric positive
/// definite L. Throws NotPositiveDefinite.
SymMatrix solve_LQL(const SymMatrix& L, const Tolerances& tol = {});

/// ‖L·Q·L − Q⁻¹‖_max
double lql_residual(const Matrix& L, const Matrix& Q);

/// For PSD Q with Q² = I (within 1e-8) reports ‖Q − I‖_max. worst_point holds
/// the (row, column) of the largest deviation. NotPSD / NotInvolution.
ResidualReport check_involution_psd(const SymMatrix& Q, const Tolerances& tol = {});

/// Residual of f(x) = τ(⟨y, u⟩ − f(u)) + ⟨w,x⟩ + β with y = Ex + c and
/// u = (f')⁻¹(y) = A⁻¹(y − b). Requires positive definite A.
ResidualReport functional_differential_residual(const TransformParams& p, const QuadraticFn& q,
                                                std::span<const Vector> points, const Tolerances& tol = {});

/// ½⟨Bx,x⟩ for 2×2 PSD B with det B = 1 (BadDeterminant / NotPSD / DimMismatch).
QuadraticFn skew_solution(const SymMatrix& B, const Tolerances& tol = {});

/// E acting as (x₁,x₂,…) ↦ (x₂,−x₁,x₄,−x₃,…) on ℝ^{2·blocks}, τ = 1, c = w = 0, β = 0.
TransformParams rotation_params(std::size_t blocks = 1);

} // namespace fenchel
