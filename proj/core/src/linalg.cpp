#include "fenchel/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fenchel {

namespace {

void require_finite(std::span<const double> xs, std::string_view what) {
    for (double x : xs) {
        if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, std::string(what) + " has a non-finite entry");
    }
}

void require_same_dim(std::size_t a, std::size_t b, std::string_view what) {
    if (a != b) {
        throw Error(ErrorCode::DimMismatch,
                    std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
    }
}

} // namespace

// --- Vector -----------------------------------------------------------------

Vector::Vector(std::size_t dim, double fill) : v_(dim, fill) { require_finite(v_, "Vector"); }

Vector::Vector(std::initializer_list<double> entries) : v_(entries) { require_finite(v_, "Vector"); }

Vector::Vector(std::vector<double> entries) : v_(std::move(entries)) { require_finite(v_, "Vector"); }

Vector& Vector::operator+=(const Vector& o) {
    require_same_dim(dim(), o.dim(), "vector addition");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

Vector& Vector::operator-=(const Vector& o) {
    require_same_dim(dim(), o.dim(), "vector subtraction");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

Vector& Vector::operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
}

double Vector::max_abs() const noexcept {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

double Vector::norm() const noexcept { return std::sqrt(dot(*this, *this)); }

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator-(Vector a) { return a *= -1.0; }
Vector operator*(double s, Vector a) { return a *= s; }
Vector operator*(Vector a, double s) { return a *= s; }
Vector operator/(Vector a, double s) { return a *= 1.0 / s; }

double dot(const Vector& a, const Vector& b) {
    require_same_dim(a.dim(), b.dim(), "dot product");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

// --- Matrix -----------------------------------------------------------------

Matrix::Matrix(std::size_t n, double fill) : n_(n), a_(n * n, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) : n_(rows.size()) {
    a_.reserve(n_ * n_);
    for (const auto& r : rows) {
        require_same_dim(r.size(), n_, "matrix row length");
        a_.insert(a_.end(), r.begin(), r.end());
    }
    require_finite(a_, "Matrix");
}

Matrix::Matrix(std::size_t n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
    require_same_dim(a_.size(), n * n, "row-major matrix entries");
    require_finite(a_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const Vector& d) {
    Matrix m(d.dim());
    for (std::size_t i = 0; i < d.dim(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::max_abs() const noexcept {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
}

double Matrix::frobenius() const noexcept {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
}

Vector Matrix::column(std::size_t j) const {
    Vector c(n_);
    for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require_same_dim(n_, o.n_, "matrix addition");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require_same_dim(n_, o.n_, "matrix subtraction");
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_dim(a.size(), b.size(), "matrix product");
    const std::size_t n = a.size();
    Matrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Vector operator*(const Matrix& a, const Vector& x) {
    require_same_dim(a.size(), x.dim(), "matrix-vector product");
    Vector y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.size(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double asymmetry(const Matrix& m) noexcept {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) worst = std::max(worst, std::abs(m(i, j) - m(j, i)));
    return worst / std::max(1.0, m.max_abs());
}

bool is_symmetric(const Matrix& m, const Tolerances& tol) noexcept { return asymmetry(m) <= tol.sym; }

// --- SymMatrix --------------------------------------------------------------

SymMatrix::SymMatrix(const Matrix& m, const Tolerances& tol) {
    if (!is_symmetric(m, tol)) {
        throw Error(ErrorCode::NotSymmetric, "relative asymmetry " + std::to_string(asymmetry(m)));
    }
    *this = symmetrize(m);
}

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows) : SymMatrix(Matrix(rows)) {}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
    SymMatrix s;
    s.m_ = Matrix(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) s.m_(i, j) = 0.5 * (m(i, j) + m(j, i));
    return s;
}

// --- spectral ---------------------------------------------------------------

double Spectral::max_abs_eigenvalue() const noexcept {
    double m = 0.0;
    for (double d : eigenvalues) m = std::max(m, std::abs(d));
    return m;
}

std::string_view to_string(Definiteness d) noexcept {
    switch (d) {
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
    case Definiteness::Indefinite: return "Indefinite";
    case Definiteness::NegativeSemidefinite: return "NegativeSemidefinite";
    case Definiteness::NegativeDefinite: return "NegativeDefinite";
    }
    return "Unknown";
}

Spectral eigendecompose(const SymMatrix& sym) {
    const std::size_t n = sym.size();
    Matrix a = sym.matrix();
    Matrix v = Matrix::identity(n);

    const double target = 1e-14 * a.frobenius();
    auto off_diagonal = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    constexpr int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_diagonal() > target; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = a(p, k) = c * akp - s * akq;
                    a(k, q) = a(q, k) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    Spectral out;
    out.eigenvalues.resize(n);
    out.U = Matrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.eigenvalues[k] = a(src, src);
        double sign = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(v(i, src)) > 1e-12) {
                sign = v(i, src) > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) out.U(i, k) = sign * v(i, src);
    }
    return out;
}

Spectral eigendecompose(const Matrix& m, const Tolerances& tol) { return eigendecompose(SymMatrix(m, tol)); }

SymMatrix matrix_abs(const SymMatrix& m) {
    return eigendecompose(m).apply([](double d) { return std::abs(d); });
}

SymMatrix matrix_sign(const SymMatrix& m, const Tolerances& tol) {
    const Spectral s = eigendecompose(m);
    const double cutoff = tol.sing * s.max_abs_eigenvalue();
    for (double d : s.eigenvalues) {
        if (std::abs(d) <= cutoff) throw Error(ErrorCode::Singular, "matrix_sign of a singular matrix");
    }
    return s.apply([](double d) { return d > 0.0 ? 1.0 : -1.0; });
}

SymMatrix matrix_sqrt(const SymMatrix& m, const Tolerances& tol) {
    const Spectral s = eigendecompose(m);
    const double floor = -tol.psd * std::max(1.0, s.max_abs_eigenvalue());
    for (double d : s.eigenvalues) {
        if (d < floor) throw Error(ErrorCode::NotPSD, "matrix_sqrt: eigenvalue " + std::to_string(d));
    }
    return s.apply([](double d) { return std::sqrt(std::max(d, 0.0)); });
}

Matrix invert(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix a = m;
    Matrix inv = Matrix::identity(n);
    const double scale = m.max_abs();
    if (n == 0) return inv;
    if (scale == 0.0) throw Error(ErrorCode::Singular, "zero matrix");

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) <= 1e-13 * scale) throw Error(ErrorCode::Singular, "pivot below threshold");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const double p = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

SymMatrix invert(const SymMatrix& m, const Tolerances& tol) {
    const Spectral s = eigendecompose(m);
    const double cutoff = tol.sing * s.max_abs_eigenvalue();
    if (s.max_abs_eigenvalue() == 0.0) throw Error(ErrorCode::Singular, "zero matrix");
    for (double d : s.eigenvalues) {
        if (std::abs(d) <= cutoff) throw Error(ErrorCode::Singular, "eigenvalue below threshold");
    }
    return s.apply([](double d) { return 1.0 / d; });
}

namespace {

std::optional<Vector> accept_if_consistent(const Matrix& m, const Vector& rhs, Vector x, const Tolerances& tol) {
    const double residual = (m * x - rhs).norm();
    if (residual > tol.cons * (1.0 + rhs.norm())) return std::nullopt;
    return x;
}

} // namespace

std::optional<Vector> solve_min_norm(const SymMatrix& m, const Vector& rhs, const Tolerances& tol) {
    require_same_dim(m.size(), rhs.dim(), "solve_min_norm");
    const Spectral s = eigendecompose(m);
    const std::size_t n = m.size();
    const double cutoff = tol.sing * s.max_abs_eigenvalue();
    Vector x(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double d = s.eigenvalues[k];
        if (std::abs(d) <= cutoff || d == 0.0) continue;
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += s.U(i, k) * rhs[i];
        proj /= d;
        for (std::size_t i = 0; i < n; ++i) x[i] += proj * s.U(i, k);
    }
    return accept_if_consistent(m.matrix(), rhs, std::move(x), tol);
}

std::optional<Vector> solve_min_norm(const Matrix& m, const Vector& rhs, const Tolerances& tol) {
    require_same_dim(m.size(), rhs.dim(), "solve_min_norm");
    const std::size_t n = m.size();

    // One-sided Jacobi: rotate columns of W = M·V until mutually orthogonal.
    Matrix w = m;
    Matrix v = Matrix::identity(n);
    constexpr int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0, gamma = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    alpha += w(i, p) * w(i, p);
                    beta += w(i, q) * w(i, q);
                    gamma += w(i, p) * w(i, q);
                }
                if (gamma == 0.0 || std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t i = 0; i < n; ++i) {
                    const double wp = w(i, p), wq = w(i, q);
                    w(i, p) = c * wp - s * wq;
                    w(i, q) = s * wp + c * wq;
                    const double vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - s * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
        if (!rotated) break;
    }

    // Column j of W equals sigma_j·u_j; x = Σ (⟨w_j, rhs⟩ / sigma_j²)·v_j.
    std::vector<double> sigma2(n, 0.0);
    double sigma_max = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) sigma2[j] += w(i, j) * w(i, j);
        sigma_max = std::max(sigma_max, std::sqrt(sigma2[j]));
    }
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double sigma = std::sqrt(sigma2[j]);
        if (sigma == 0.0 || sigma <= tol.sing * sigma_max) continue;
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += w(i, j) * rhs[i];
        proj /= sigma2[j];
        for (std::size_t i = 0; i < n; ++i) x[i] += proj * v(i, j);
    }
    return accept_if_consistent(m, rhs, std::move(x), tol);
}

Definiteness definiteness(const Spectral& s, const Tolerances& tol) {
    if (s.eigenvalues.empty()) return Definiteness::PositiveSemidefinite;
    const double lo = s.eigenvalues.back();
    const double hi = s.eigenvalues.front();
    if (lo > tol.pd) return Definiteness::PositiveDefinite;
    if (hi < -tol.pd) return Definiteness::NegativeDefinite;
    if (lo >= -tol.pd) return Definiteness::PositiveSemidefinite;
    if (hi <= tol.pd) return Definiteness::NegativeSemidefinite;
    return Definiteness::Indefinite;
}

Definiteness definiteness(const SymMatrix& m, const Tolerances& tol) { return definiteness(eigendecompose(m), tol); }

double determinant(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix a = m;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

} // namespace fenchel
