#include "fenchel/quadratic.hpp"

#include <cmath>
#include <string>

namespace fenchel {

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw Error(ErrorCode::DimMismatch, std::string(what) + ": " + std::to_string(got) + " vs " + std::to_string(want));
    }
}

SymMatrix positive_definite_inverse(const SymMatrix& A, const Tolerances& tol, const char* what) {
    const Spectral s = eigendecompose(A);
    if (definiteness(s, tol) != Definiteness::PositiveDefinite) {
        throw Error(ErrorCode::NotPositiveDefinite, std::string(what) + ": leading coefficient is not positive definite");
    }
    return s.apply([](double d) { return 1.0 / d; });
}

} // namespace

QuadraticFn::QuadraticFn(SymMatrix leading, Vector linear, double constant)
    : A(std::move(leading)), b(std::move(linear)), gamma(constant) {
    require_dim(b.dim(), A.size(), "QuadraticFn linear coefficient");
    if (!std::isfinite(gamma)) throw Error(ErrorCode::InvalidArgument, "QuadraticFn constant is not finite");
}

QuadraticFn QuadraticFn::energy(std::size_t n) { return {SymMatrix::identity(n), Vector::zeros(n), 0.0}; }

TransformParams::TransformParams(Matrix E, Vector c, Vector w, double tau, double beta)
    : E_(std::move(E)), c_(std::move(c)), w_(std::move(w)), tau_(tau), beta_(beta) {
    if (E_.size() == 0) throw Error(ErrorCode::DimMismatch, "TransformParams: empty E");
    require_dim(c_.dim(), E_.size(), "TransformParams c");
    require_dim(w_.dim(), E_.size(), "TransformParams w");
    if (!(tau_ > 0.0) || !std::isfinite(tau_)) throw Error(ErrorCode::InvalidArgument, "TransformParams: tau must be > 0");
    if (!std::isfinite(beta_)) throw Error(ErrorCode::InvalidArgument, "TransformParams: beta must be finite");
    E_inv_ = invert(E_);
}

TransformParams TransformParams::identity(std::size_t n) {
    return {Matrix::identity(n), Vector::zeros(n), Vector::zeros(n), 1.0, 0.0};
}

double eval(const QuadraticFn& q, const Vector& x) {
    require_dim(x.dim(), q.dim(), "eval");
    return 0.5 * dot(q.A.matrix() * x, x) + dot(q.b, x) + q.gamma;
}

QuadraticFn conjugate_quadratic(const QuadraticFn& q, const Tolerances& tol) {
    const SymMatrix inv = positive_definite_inverse(q.A, tol, "conjugate_quadratic");
    Vector inv_b = inv.matrix() * q.b;
    const double constant = 0.5 * dot(inv_b, q.b) - q.gamma;
    return {inv, -std::move(inv_b), constant};
}

QuadraticFn compose_affine(const QuadraticFn& h, const Matrix& M, const Vector& shift, double scale,
                           const Vector& linear, double offset) {
    require_dim(M.size(), h.dim(), "compose_affine map");
    require_dim(shift.dim(), h.dim(), "compose_affine shift");
    require_dim(linear.dim(), h.dim(), "compose_affine linear term");
    const Matrix Mt = M.transpose();
    const Vector grad_at_shift = h.A.matrix() * shift + h.b;
    QuadraticFn out;
    out.A = SymMatrix::symmetrize(scale * (Mt * h.A.matrix() * M));
    out.b = scale * (Mt * grad_at_shift) + linear;
    out.gamma = scale * eval(h, shift) + offset;
    return out;
}

QuadraticFn apply_transform(const TransformParams& p, const QuadraticFn& q, const Tolerances& tol) {
    require_dim(q.dim(), p.dim(), "apply_transform");
    const SymMatrix inv = positive_definite_inverse(q.A, tol, "apply_transform");
    const Matrix Et = p.E().transpose();
    const double tau = p.tau();
    const Vector d = p.c() - q.b;
    const Vector inv_d = inv.matrix() * d;

    QuadraticFn out;
    out.A = SymMatrix::symmetrize(tau * (Et * inv.matrix() * p.E()));
    out.b = tau * (Et * inv_d) + p.w();
    out.gamma = tau * (0.5 * dot(inv_d, d) - q.gamma) + p.beta();
    return out;
}

DualParams dual_params(const TransformParams& p) {
    const double inv_tau = 1.0 / p.tau();
    const Matrix inv_t = p.E_inverse().transpose();
    const Vector inv_c = p.E_inverse() * p.c();
    DualParams d;
    d.H = inv_tau * inv_t;
    d.v = -inv_tau * (inv_t * p.w());
    d.z = -inv_c;
    d.rho = dot(p.w(), inv_c) - p.beta();
    return d;
}

bool is_convex(const QuadraticFn& q, const Tolerances& tol) {
    const Definiteness d = definiteness(q.A, tol);
    return d == Definiteness::PositiveDefinite || d == Definiteness::PositiveSemidefinite;
}

bool is_strictly_convex(const QuadraticFn& q, const Tolerances& tol) {
    return definiteness(q.A, tol) == Definiteness::PositiveDefinite;
}

QuadraticFn direct_sum(std::span<const QuadraticFn> parts) {
    if (parts.empty()) throw Error(ErrorCode::EmptyList, "direct_sum of no blocks");
    std::size_t n = 0;
    for (const auto& q : parts) n += q.dim();
    Matrix A(n);
    Vector b(n);
    double gamma = 0.0;
    std::size_t off = 0;
    for (const auto& q : parts) {
        for (std::size_t i = 0; i < q.dim(); ++i) {
            b[off + i] = q.b[i];
            for (std::size_t j = 0; j < q.dim(); ++j) A(off + i, off + j) = q.A(i, j);
        }
        gamma += q.gamma;
        off += q.dim();
    }
    return {SymMatrix::symmetrize(A), std::move(b), gamma};
}

DirectSum::DirectSum(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw Error(ErrorCode::EmptyList, "DirectSum of no blocks");
    offsets_.reserve(blocks_.size());
    for (const auto& blk : blocks_) {
        if (blk.dim == 0) throw Error(ErrorCode::InvalidArgument, "DirectSum block of dimension 0");
        if (!blk.f) throw Error(ErrorCode::InvalidArgument, "DirectSum block without a function");
        offsets_.push_back(dim_);
        dim_ += blk.dim;
    }
}

double DirectSum::operator()(const Vector& x) const {
    require_dim(x.dim(), dim_, "DirectSum evaluation");
    double total = 0.0;
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        const auto& blk = blocks_[k];
        std::vector<double> part(x.data().begin() + static_cast<std::ptrdiff_t>(offsets_[k]),
                                 x.data().begin() + static_cast<std::ptrdiff_t>(offsets_[k] + blk.dim));
        total += blk.f(Vector(std::move(part)));
    }
    return total;
}

ScalarFunction as_function(QuadraticFn q) {
    return [q = std::move(q)](const Vector& x) { return eval(q, x); };
}

} // namespace fenchel
