#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fenchel/linalg.hpp"
#include "support/oracles.hpp"

using namespace fenchel;

namespace {

Matrix reconstruct(const Spectral& s) {
    const std::size_t n = s.eigenvalues.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) m(i, j) += s.U(i, k) * s.eigenvalues[k] * s.U(j, k);
    return m;
}

double orthogonality_error(const Matrix& U) {
    return oracle::max_abs_diff(U.transpose() * U, Matrix::identity(U.size()));
}

} // namespace

TEST(Vector, RejectsNonFiniteEntries) {
    EXPECT_THROW(Vector({1.0, std::numeric_limits<double>::infinity()}), Error);
    EXPECT_THROW(Vector({std::nan("")}), Error);
}

TEST(Vector, DotRequiresMatchingDims) {
    EXPECT_THROW(dot(Vector{1.0}, Vector{1.0, 2.0}), Error);
    EXPECT_DOUBLE_EQ(dot(Vector{1.0, 2.0}, Vector{3.0, 4.0}), 11.0);
}

TEST(Matrix, RaggedRowsAreDimMismatch) {
    try {
        Matrix m{{1.0, 2.0}, {3.0}};
        FAIL() << "expected DimMismatch";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
    }
}

TEST(SymMatrix, RejectsAsymmetricInput) {
    try {
        SymMatrix s(Matrix{{1.0, 2.0}, {0.0, 1.0}});
        FAIL() << "expected NotSymmetric";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
    }
}

TEST(SymMatrix, AcceptsRoundoffAsymmetryAndStoresExactSymmetricPart) {
    const SymMatrix s(Matrix{{1.0, 2.0}, {2.0 + 1e-12, 1.0}});
    EXPECT_EQ(s(0, 1), s(1, 0));
}

TEST(Eigendecompose, IdentityHasUnitEigenvalues) {
    const Spectral s = eigendecompose(SymMatrix::identity(2));
    EXPECT_EQ(s.eigenvalues, (std::vector<double>{1.0, 1.0}));
    EXPECT_LE(orthogonality_error(s.U), 1e-15);
}

TEST(Eigendecompose, DiagonalIsSortedDescending) {
    const Spectral s = eigendecompose(SymMatrix{{-1.0, 0.0}, {0.0, 3.0}});
    EXPECT_EQ(s.eigenvalues, (std::vector<double>{3.0, -1.0}));
}

TEST(Eigendecompose, TwoByTwoMatchesCharacteristicPolynomial) {
    const SymMatrix m{{2.0, 1.0}, {1.0, 2.0}};
    const Spectral s = eigendecompose(m);
    const auto [hi, lo] = oracle::eig2x2(2.0, 1.0, 2.0);
    EXPECT_NEAR(s.eigenvalues[0], hi, 1e-14);
    EXPECT_NEAR(s.eigenvalues[1], lo, 1e-14);
    EXPECT_LE(oracle::max_abs_diff(reconstruct(s), m), 1e-12);
}

TEST(Eigendecompose, NonSymmetricMatrixIsRejected) {
    try {
        eigendecompose(Matrix{{0.0, 1.0}, {-1.0, 0.0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
    }
}

TEST(Eigendecompose, EigenvectorsHavePositiveLeadingComponent) {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Spectral s = eigendecompose(SymMatrix(rng.symmetric(5, -4, 4)));
        for (std::size_t k = 0; k < 5; ++k) {
            std::size_t i = 0;
            while (std::abs(s.U(i, k)) <= 1e-12) ++i;
            EXPECT_GT(s.U(i, k), 0.0);
        }
    }
}

TEST(Eigendecompose, IsDeterministic) {
    oracle::Rng rng(5);
    const SymMatrix m(rng.symmetric(6, -10, 10));
    const Spectral a = eigendecompose(m);
    const Spectral b = eigendecompose(m);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_EQ(a.U, b.U);
}

TEST(EigendecomposeProperty, ReconstructsRandomSymmetricMatrices) {
    oracle::Rng rng(20240601);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = rng.index(1, 16);
        const SymMatrix m(rng.symmetric(n, -10, 10));
        const Spectral s = eigendecompose(m);
        const double scale = std::max(1.0, m.matrix().max_abs());
        ASSERT_LE(oracle::max_abs_diff(reconstruct(s), m), 1e-10 * scale) << "n=" << n;
        ASSERT_LE(orthogonality_error(s.U), 1e-12);
        ASSERT_TRUE(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));
    }
}

TEST(MatrixAbs, Examples) {
    EXPECT_EQ(matrix_abs(SymMatrix{{2.0, 0.0}, {0.0, -3.0}}), (SymMatrix{{2.0, 0.0}, {0.0, 3.0}}));
    EXPECT_EQ(matrix_abs(SymMatrix::identity(2)), SymMatrix::identity(2));
    const SymMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
    const SymMatrix a = matrix_abs(swap);
    EXPECT_LE(oracle::max_abs_diff(a.matrix(), Matrix::identity(2)), 1e-15);
    EXPECT_LE(oracle::max_abs_diff(a.matrix() * a.matrix(), swap.matrix() * swap.matrix()), 1e-15);
}

TEST(MatrixSign, Examples) {
    EXPECT_EQ(matrix_sign(SymMatrix{{2.0, 0.0}, {0.0, -3.0}}), (SymMatrix{{1.0, 0.0}, {0.0, -1.0}}));
    EXPECT_EQ(matrix_sign(SymMatrix::identity(2)), SymMatrix::identity(2));
    const SymMatrix swap{{0.0, 1.0}, {1.0, 0.0}};
    const SymMatrix sg = matrix_sign(swap);
    EXPECT_LE(oracle::max_abs_diff(sg.matrix(), swap.matrix()), 1e-15);
    EXPECT_LE(oracle::max_abs_diff(sg.matrix() * matrix_abs(swap).matrix(), swap.matrix()), 1e-15);
}

TEST(MatrixSign, SingularInputThrows) {
    try {
        matrix_sign(SymMatrix{{1.0, 0.0}, {0.0, 0.0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Singular);
    }
}

TEST(MatrixSignProperty, SignTimesAbsIsInputAndSignSquaredIsIdentity) {
    oracle::Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(2, 8);
        const SymMatrix m(rng.indefinite(n, 0.1, 5.0));
        const Matrix sg = matrix_sign(m).matrix();
        ASSERT_LE(oracle::max_abs_diff(sg * matrix_abs(m).matrix(), m), 1e-10);
        ASSERT_LE(oracle::max_abs_diff(sg * sg, Matrix::identity(n)), 1e-10);
    }
}

TEST(MatrixSqrt, Examples) {
    EXPECT_EQ(matrix_sqrt(SymMatrix{{4.0, 0.0}, {0.0, 9.0}}), (SymMatrix{{2.0, 0.0}, {0.0, 3.0}}));
    EXPECT_EQ(matrix_sqrt(SymMatrix::identity(3)), SymMatrix::identity(3));
    const SymMatrix m{{2.0, 1.0}, {1.0, 2.0}};
    const Matrix r = matrix_sqrt(m).matrix();
    EXPECT_LE(oracle::max_abs_diff(r * r, m), 1e-10);
    EXPECT_NE(definiteness(matrix_sqrt(m)), Definiteness::Indefinite);
}

TEST(MatrixSqrt, NegativeEigenvalueIsNotPSD) {
    try {
        matrix_sqrt(SymMatrix{{1.0, 0.0}, {0.0, -1e-3}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotPSD);
    }
}

TEST(MatrixSqrt, TinyNegativeRoundoffIsClamped) {
    const Matrix r = matrix_sqrt(SymMatrix{{1.0, 0.0}, {0.0, -1e-14}}).matrix();
    EXPECT_EQ(r(1, 1), 0.0);
}

TEST(Invert, Examples) {
    EXPECT_EQ(invert(Matrix::identity(3)), Matrix::identity(3));
    EXPECT_EQ(invert(Matrix{{2.0, 0.0}, {0.0, 4.0}}), (Matrix{{0.5, 0.0}, {0.0, 0.25}}));
    const Matrix rot{{0.0, 1.0}, {-1.0, 0.0}};
    const Matrix inv = invert(rot);
    EXPECT_EQ(inv, (Matrix{{0.0, -1.0}, {1.0, 0.0}}));
    EXPECT_LE(oracle::max_abs_diff(rot * inv, Matrix::identity(2)), 0.0);
}

TEST(Invert, SingularThrows) {
    try {
        invert(Matrix{{1.0, 2.0}, {2.0, 4.0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Singular);
    }
    EXPECT_THROW(invert(SymMatrix{{1.0, 0.0}, {0.0, 0.0}}), Error);
}

TEST(InvertProperty, ProductWithInputIsIdentity) {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(1, 8);
        Matrix m = rng.matrix(n, -2, 2);
        for (std::size_t i = 0; i < n; ++i) m(i, i) += (rng.coin() ? 4.0 : -4.0);
        ASSERT_LE(oracle::max_abs_diff(m * invert(m), Matrix::identity(n)), 1e-12);
    }
}

TEST(SolveMinNorm, ZeroTimesBEqualsZeroGivesZero) {
    const auto x = solve_min_norm(Matrix{{0.0}}, Vector{0.0});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ((*x)[0], 0.0);
}

TEST(SolveMinNorm, ZeroTimesBEqualsOneIsInconsistent) {
    EXPECT_FALSE(solve_min_norm(Matrix{{0.0}}, Vector{1.0}).has_value());
    EXPECT_FALSE(solve_min_norm(SymMatrix{{0.0}}, Vector{1.0}).has_value());
}

TEST(SolveMinNorm, DiagonalSystem) {
    const auto x = solve_min_norm(Matrix{{2.0, 0.0}, {0.0, 2.0}}, Vector{4.0, 2.0});
    ASSERT_TRUE(x.has_value());
    EXPECT_LE(oracle::max_abs_diff(*x, Vector{2.0, 1.0}), 1e-15);
}

TEST(SolveMinNorm, RankDeficientGeneralMatrixPicksMinimumNorm) {
    // Rows are multiples of (1, 1): solutions of x + y = 1 with least norm sit at (1/2, 1/2).
    const auto x = solve_min_norm(Matrix{{1.0, 1.0}, {2.0, 2.0}}, Vector{1.0, 2.0});
    ASSERT_TRUE(x.has_value());
    EXPECT_LE(oracle::max_abs_diff(*x, Vector{0.5, 0.5}), 1e-14);
    EXPECT_FALSE(solve_min_norm(Matrix{{1.0, 1.0}, {2.0, 2.0}}, Vector{1.0, 0.0}).has_value());
}

TEST(SolveMinNormProperty, ConsistentSolutionsAreOrthogonalToNullSpace) {
    oracle::Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(2, 7);
        const std::size_t rank = rng.index(1, n - 1);
        std::vector<double> d(n, 0.0);
        for (std::size_t k = 0; k < rank; ++k) d[k] = rng.uniform(0.5, 3.0) * (rng.coin() ? 1 : -1);
        const SymMatrix m = SymMatrix::symmetrize(rng.with_spectrum(d));
        const Vector rhs = m.matrix() * rng.vector(n, -2, 2);

        for (const auto& x : {solve_min_norm(m, rhs), solve_min_norm(m.matrix(), rhs)}) {
            ASSERT_TRUE(x.has_value());
            ASSERT_LE((m.matrix() * *x - rhs).max_abs(), 1e-9);
            const Spectral s = eigendecompose(m);
            for (std::size_t k = 0; k < n; ++k) {
                if (std::abs(s.eigenvalues[k]) > 1e-8) continue;
                ASSERT_LE(std::abs(dot(s.U.column(k), *x)), 1e-8);
            }
        }
    }
}

TEST(Definiteness, Examples) {
    EXPECT_EQ(definiteness(SymMatrix::identity(2)), Definiteness::PositiveDefinite);
    EXPECT_EQ(definiteness(SymMatrix{{1.0, 0.0}, {0.0, 0.0}}), Definiteness::PositiveSemidefinite);
    EXPECT_EQ(definiteness(SymMatrix{{2.0, 1.0}, {1.0, 2.0}}), Definiteness::PositiveDefinite);
    EXPECT_EQ(definiteness(SymMatrix{{1.0, 0.0}, {0.0, -1.0}}), Definiteness::Indefinite);
    EXPECT_EQ(definiteness(SymMatrix{{-1.0, 0.0}, {0.0, 0.0}}), Definiteness::NegativeSemidefinite);
    EXPECT_EQ(definiteness(SymMatrix{{-1.0, 0.0}, {0.0, -2.0}}), Definiteness::NegativeDefinite);
}

TEST(DefinitenessProperty, InvertiblePsdIsPositiveDefinite) {
    oracle::Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = rng.index(1, 8);
        const SymMatrix m = SymMatrix::symmetrize(rng.positive_definite(n, 1e-3, 5.0));
        ASSERT_EQ(definiteness(m), Definiteness::PositiveDefinite);
    }
}

TEST(Determinant, SmallCases) {
    EXPECT_DOUBLE_EQ(determinant(Matrix{{2.0, 1.0}, {1.0, 1.0}}), 1.0);
    EXPECT_DOUBLE_EQ(determinant(Matrix{{0.0, 1.0}, {-1.0, 0.0}}), 1.0);
    EXPECT_EQ(determinant(Matrix{{1.0, 2.0}, {2.0, 4.0}}), 0.0);
}
