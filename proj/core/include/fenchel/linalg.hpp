#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fenchel/error.hpp"
#include "fenchel/tolerances.hpp"

namespace fenchel {

/// Dense real vector with finite entries.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim, double fill = 0.0);
    Vector(std::initializer_list<double> entries);
    explicit Vector(std::vector<double> entries);

    static Vector zeros(std::size_t dim) { return Vector(dim, 0.0); }

    std::size_t dim() const noexcept { return v_.size(); }
    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }

    std::span<const double> data() const noexcept { return v_; }
    const std::vector<double>& entries() const noexcept { return v_; }

    Vector& operator+=(const Vector& o);
    Vector& operator-=(const Vector& o);
    Vector& operator*=(double s);

    double max_abs() const noexcept;
    double norm() const noexcept;

    bool operator==(const Vector&) const = default;

private:
    std::vector<double> v_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator-(Vector a);
Vector operator*(double s, Vector a);
Vector operator*(Vector a, double s);
Vector operator/(Vector a, double s);
double dot(const Vector& a, const Vector& b);

/// Square n×n real matrix, row-major storage.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0);
    /// Rows of equal length n; throws DimMismatch when not square.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);
    /// Row-major entries; size must be n*n.
    Matrix(std::size_t n, std::vector<double> row_major);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(const Vector& d);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::span<const double> row_major() const noexcept { return a_; }

    Matrix transpose() const;
    double max_abs() const noexcept;
    double frobenius() const noexcept;
    Vector column(std::size_t j) const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(double s);

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

/// Max-norm of the antisymmetric part relative to max(1, max|M|).
double asymmetry(const Matrix& m) noexcept;
bool is_symmetric(const Matrix& m, const Tolerances& tol = {}) noexcept;

/// A matrix known to be symmetric. Construction from a general matrix checks
/// the symmetry tolerance and then stores the exact symmetric part.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(const Matrix& m, const Tolerances& tol = {});
    SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

    /// (M + Mᵀ)/2 without a tolerance check, for values symmetric by construction.
    static SymMatrix symmetrize(const Matrix& m);
    static SymMatrix identity(std::size_t n) { return symmetrize(Matrix::identity(n)); }
    static SymMatrix diagonal(const Vector& d) { return symmetrize(Matrix::diagonal(d)); }

    std::size_t size() const noexcept { return m_.size(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    const Matrix& matrix() const noexcept { return m_; }
    operator const Matrix&() const noexcept { return m_; }

    bool operator==(const SymMatrix&) const = default;

private:
    Matrix m_;
};

/// M = U·diag(eigenvalues)·Uᵀ with eigenvalues sorted descending.
struct Spectral {
    std::vector<double> eigenvalues;
    Matrix U;

    /// U·diag(f(d))·Uᵀ
    template <typename F>
    SymMatrix apply(F&& f) const {
        const std::size_t n = eigenvalues.size();
        Matrix out(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double fk = f(eigenvalues[k]);
            if (fk == 0.0) continue;
            for (std::size_t i = 0; i < n; ++i) {
                const double uik = U(i, k) * fk;
                for (std::size_t j = 0; j < n; ++j) out(i, j) += uik * U(j, k);
            }
        }
        return SymMatrix::symmetrize(out);
    }

    double max_abs_eigenvalue() const noexcept;
};

enum class Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    Indefinite,
    NegativeSemidefinite,
    NegativeDefinite,
};

std::string_view to_string(Definiteness d) noexcept;

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius mass is at most
/// 1e-14·‖M‖_F. Eigenvectors are normalized so that their first component
/// with magnitude above 1e-12 is positive.
Spectral eigendecompose(const SymMatrix& m);
/// Checks symmetry (NotSymmetric) before decomposing.
Spectral eigendecompose(const Matrix& m, const Tolerances& tol = {});

SymMatrix matrix_abs(const SymMatrix& m);
/// Throws Singular when some |eigenvalue| <= tol.sing·max|eigenvalue|.
SymMatrix matrix_sign(const SymMatrix& m, const Tolerances& tol = {});
/// Throws NotPSD when the smallest eigenvalue is below -tol.psd·max(1, max|d|).
SymMatrix matrix_sqrt(const SymMatrix& m, const Tolerances& tol = {});

/// Gauss-Jordan with partial pivoting; throws Singular.
Matrix invert(const Matrix& m);
/// Spectral inverse; the result is exactly symmetric. Throws Singular.
SymMatrix invert(const SymMatrix& m, const Tolerances& tol = {});

/// Minimum-norm solution of M·x = rhs, or nullopt when the system is
/// inconsistent (residual above tol.cons·(1 + ‖rhs‖)).
/// General M goes through a one-sided Jacobi SVD; symmetric M through its
/// spectral pseudo-inverse.
std::optional<Vector> solve_min_norm(const Matrix& m, const Vector& rhs, const Tolerances& tol = {});
std::optional<Vector> solve_min_norm(const SymMatrix& m, const Vector& rhs, const Tolerances& tol = {});

Definiteness definiteness(const SymMatrix& m, const Tolerances& tol = {});
Definiteness definiteness(const Spectral& s, const Tolerances& tol = {});

double determinant(const Matrix& m);

} // namespace fenchel
