#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fenchel/linalg.hpp"

namespace fenchel {

/// Extended-real valued function on ℝⁿ (+∞ allowed, −∞ never produced).
using ScalarFunction = std::function<double(const Vector&)>;

/// x ↦ ½⟨Ax,x⟩ + ⟨b,x⟩ + γ
struct QuadraticFn {
    SymMatrix A;
    Vector b;
    double gamma = 0.0;

    QuadraticFn() = default;
    QuadraticFn(SymMatrix leading, Vector linear, double constant);

    /// ½‖x‖² on ℝⁿ.
    static QuadraticFn energy(std::size_t n);

    std::size_t dim() const noexcept { return b.dim(); }
};

/// Parameters of x ↦ τ·f*(Ex+c) + ⟨w,x⟩ + β. Validated on construction:
/// DimMismatch, InvalidArgument (τ <= 0 or non-finite β), Singular (E).
class TransformParams {
public:
    TransformParams(Matrix E, Vector c, Vector w, double tau, double beta);

    /// (E=I, c=0, w=0, τ=1, β=0) on ℝⁿ.
    static TransformParams identity(std::size_t n);

    const Matrix& E() const noexcept { return E_; }
    const Matrix& E_inverse() const noexcept { return E_inv_; }
    const Vector& c() const noexcept { return c_; }
    const Vector& w() const noexcept { return w_; }
    double tau() const noexcept { return tau_; }
    double beta() const noexcept { return beta_; }
    std::size_t dim() const noexcept { return c_.dim(); }

private:
    Matrix E_;
    Matrix E_inv_;
    Vector c_;
    Vector w_;
    double tau_;
    double beta_;
};

/// Coefficients of the conjugate of x ↦ τ·h(Ex+c) + ⟨w,x⟩ + β, which equals
/// s ↦ τ·h*(Hs + v) + ⟨z,s⟩ + ρ.
struct DualParams {
    Matrix H;
    Vector v;
    Vector z;
    double rho = 0.0;
};

double eval(const QuadraticFn& q, const Vector& x);

/// Requires A positive definite (NotPositiveDefinite otherwise).
QuadraticFn conjugate_quadratic(const QuadraticFn& q, const Tolerances& tol = {});

/// x ↦ scale·h(Mx + shift) + ⟨linear,x⟩ + offset, expanded exactly. M need not be
/// invertible.
QuadraticFn compose_affine(const QuadraticFn& h, const Matrix& M, const Vector& shift, double scale,
                           const Vector& linear, double offset);

/// Closed-form expansion of τ·q*(Ex+c) + ⟨w,x⟩ + β. The leading coefficient
/// τEᵀA⁻¹E is symmetrized.
QuadraticFn apply_transform(const TransformParams& p, const QuadraticFn& q, const Tolerances& tol = {});

/// H = τ⁻¹E⁻ᵀ, v = −τ⁻¹E⁻ᵀw, z = −E⁻¹c, ρ = ⟨w,E⁻¹c⟩ − β.
DualParams dual_params(const TransformParams& p);

bool is_convex(const QuadraticFn& q, const Tolerances& tol = {});
bool is_strictly_convex(const QuadraticFn& q, const Tolerances& tol = {});

/// Block-diagonal sum of quadratics, blocks in the given order. Throws EmptyList.
QuadraticFn direct_sum(std::span<const QuadraticFn> parts);

/// g(x) = Σᵢ gᵢ(x restricted to block i); blocks are laid out in the given order.
class DirectSum {
public:
    struct Block {
        std::size_t dim;
        ScalarFunction f;
    };

    /// Throws EmptyList for no blocks and InvalidArgument for a zero-dimensional block.
    explicit DirectSum(std::vector<Block> blocks);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }

    double operator()(const Vector& x) const;

private:
    std::vector<Block> blocks_;
    std::vector<std::size_t> offsets_;
    std::size_t dim_ = 0;
};

ScalarFunction as_function(QuadraticFn q);

} // namespace fenchel
