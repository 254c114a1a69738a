#include <gtest/gtest.h>

#include <cmath>

#include "qorder/linalg.hpp"
#include "qorder/random.hpp"

using namespace qorder;
using namespace qorder::linalg;

namespace {

ComplexMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
    ComplexMatrix m(r, c);
    for (auto& z : m.entries()) {
        z = random::complex_gaussian(rng);
    }
    return m;
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
    const auto g = random_matrix(d, d, rng);
    return (g + g.adjoint()) * Complex{0.5};
}

ComplexMatrix cdiag(std::vector<Complex> d) { return ComplexMatrix::diagonal(d); }

} // namespace

TEST(HermitianEig, DiagonalMatrixGivesSortedEntries) {
    const auto s = hermitian_eig(cdiag({1.0, 3.0, 2.0}));
    ASSERT_EQ(s.values.size(), 3u);
    EXPECT_NEAR(s.values[0], 3.0, 1e-14);
    EXPECT_NEAR(s.values[1], 2.0, 1e-14);
    EXPECT_NEAR(s.values[2], 1.0, 1e-14);
}

TEST(HermitianEig, PauliYHasEigenvaluesPlusMinusOne) {
    const ComplexMatrix y(2, 2, {0.0, Complex{0, -1}, Complex{0, 1}, 0.0});
    const auto s = hermitian_eig(y);
    EXPECT_NEAR(s.values[0], 1.0, 1e-14);
    EXPECT_NEAR(s.values[1], -1.0, 1e-14);
}

TEST(HermitianEig, RejectsNonHermitianInput) {
    const ComplexMatrix m(2, 2, {0.0, 1.0, 0.0, 0.0});
    try {
        hermitian_eig(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
    }
}

TEST(HermitianEig, ReconstructsRandomMatrices) {
    Rng rng(11);
    for (std::size_t d : {1u, 2u, 3u, 5u, 8u, 16u, 32u}) {
        const auto h = random_hermitian(d, rng);
        const auto s = hermitian_eig(h);
        ComplexMatrix lambda(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            lambda(i, i) = s.values[i];
            if (i > 0) {
                EXPECT_GE(s.values[i - 1], s.values[i]);
            }
        }
        const auto back = s.vectors * lambda * s.vectors.adjoint();
        EXPECT_LT((back - h).frobenius_norm(), 1e-11 * std::max(1.0, h.frobenius_norm())) << "d=" << d;
        const auto gram = s.vectors.adjoint() * s.vectors;
        EXPECT_LT((gram - ComplexMatrix::identity(d)).frobenius_norm(), 1e-12);
    }
}

TEST(HermitianEig, DegenerateSpectrum) {
    Rng rng(3);
    const auto u = random::isometry(4, 4, rng);
    const auto diag = cdiag({2.0, 2.0, 2.0, -1.0});
    const auto s = hermitian_eig(u * diag * u.adjoint());
    EXPECT_NEAR(s.values[0], 2.0, 1e-12);
    EXPECT_NEAR(s.values[2], 2.0, 1e-12);
    EXPECT_NEAR(s.values[3], -1.0, 1e-12);
}

TEST(Svd, ReconstructsTallWideAndSquare) {
    Rng rng(5);
    for (auto [r, c] : {std::pair{3u, 3u}, {5u, 2u}, {2u, 6u}, {1u, 4u}, {7u, 1u}, {32u, 32u}, {32u, 9u}}) {
        const auto m = random_matrix(r, c, rng);
        const auto s = svd(m);
        const std::size_t k = std::min(r, c);
        ASSERT_EQ(s.singular_values.size(), k);
        ComplexMatrix sigma(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            sigma(i, i) = s.singular_values[i];
        }
        EXPECT_LT((s.u * sigma * s.v.adjoint() - m).frobenius_norm(), 1e-11) << r << "x" << c;
        EXPECT_LT((s.u.adjoint() * s.u - ComplexMatrix::identity(k)).frobenius_norm(), 1e-12);
        EXPECT_LT((s.v.adjoint() * s.v - ComplexMatrix::identity(k)).frobenius_norm(), 1e-12);
    }
}

TEST(Svd, RankDeficientMatrixHasOrthonormalU) {
    ComplexVector x{1.0, 2.0, Complex{0, 1}};
    const auto m = outer(x, x);
    const auto s = svd(m);
    EXPECT_NEAR(s.singular_values[0], 6.0, 1e-12);
    EXPECT_NEAR(s.singular_values[1], 0.0, 1e-12);
    EXPECT_LT((s.u.adjoint() * s.u - ComplexMatrix::identity(3)).frobenius_norm(), 1e-12);
}

TEST(Svd, ConvergesWhenRotationsStallAtRoundingLevel) {
    // Plain machine epsilon as the orthogonality threshold never terminated here.
    const ComplexMatrix m(4, 2, {
        Complex{0x1.4e371c467ab2fp-3, -0x1.7757a046a2a3dp-3},
        Complex{-0x1.486103fcbd4d2p-8, -0x1.087ec45d91d52p-5},
        Complex{0x1.ea5ea6d867081p-2, -0x1.4cbe4646c1826p-3},
        Complex{-0x1.a0c97bdb449cbp-6, -0x1.14af8907d6b17p-3},
        Complex{-0x1.e8116dcb30277p-8, -0x1.0a9f217b8ae51p-7},
        Complex{0x1.bf57718eef50ep-11, 0x1.897e1a199401p-10},
        Complex{-0x1.5f9fb81c05272p-3, -0x1.198ca7a60717cp-1},
        Complex{0x1.0a5eaf16f7125p-3, -0x1.9e21270658b68p-8}});
    const auto s = svd(m);
    ComplexMatrix sigma(2, 2);
    sigma(0, 0) = s.singular_values[0];
    sigma(1, 1) = s.singular_values[1];
    EXPECT_LT((s.u * sigma * s.v.adjoint() - m).frobenius_norm(), 1e-14);
}

TEST(VecPNorm, KnownValues) {
    const std::vector<double> x{3.0, -4.0};
    EXPECT_NEAR(vec_p_norm(x, 2.0), 5.0, 1e-15);
    EXPECT_NEAR(vec_p_norm(x, 1.0), 7.0, 1e-15);
    EXPECT_NEAR(vec_p_norm(x, kInfinity), 4.0, 1e-15);
    const std::vector<Complex> z{Complex{3, 4}};
    EXPECT_NEAR(vec_p_norm(z, 3.0), 5.0, 1e-14);
}

TEST(VecPNorm, RejectsExponentBelowOne) {
    const std::vector<double> x{1.0};
    EXPECT_THROW(vec_p_norm(x, 0.5), Error);
}

TEST(VecPNorm, LargeEntriesDoNotOverflow) {
    const std::vector<double> x{1e200, 1e200};
    EXPECT_NEAR(vec_p_norm(x, 2.0) / 1e200, std::sqrt(2.0), 1e-14);
}

TEST(TransformedNorm, SingularMapRejected) {
    const std::vector<Complex> x{1.0, 1.0};
    const ComplexMatrix t(2, 2, {1.0, 1.0, 1.0, 1.0});
    try {
        transformed_norm(x, t, 2.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SingularMap);
    }
}

TEST(TransformedNorm, DiagonalScaling) {
    const std::vector<Complex> x{1.0, 1.0};
    const ComplexMatrix t(2, 2, {2.0, 0.0, 0.0, 1.0});
    EXPECT_NEAR(transformed_norm(x, t, 2.0), std::sqrt(5.0), 1e-14);
}

TEST(SchattenNorm, MatchesSingularValues) {
    const ComplexMatrix m(2, 2, {3.0, 0.0, 0.0, -4.0});
    EXPECT_NEAR(schatten_norm(m, 1.0), 7.0, 1e-13);
    EXPECT_NEAR(schatten_norm(m, 2.0), 5.0, 1e-13);
    EXPECT_NEAR(schatten_norm(m, kInfinity), 4.0, 1e-13);
}

TEST(EpsRank, CountsAboveRelativeThreshold) {
    const std::vector<double> v{1.0, 0.5, 1e-10, 0.0};
    EXPECT_EQ(eps_rank(v), 2u);
    EXPECT_EQ(eps_rank(v, 1e-11), 3u);
    EXPECT_EQ(eps_rank(std::vector<double>{}), 0u);
}

TEST(LeastSquares, ExactSolutionAndRankDeficiency) {
    const RealMatrix a(3, 2, {1.0, 0.0, 0.0, 1.0, 1.0, 1.0});
    const std::vector<double> b{1.0, 2.0, 3.0};
    const auto ls = least_squares(a, b);
    EXPECT_NEAR(ls.x[0], 1.0, 1e-13);
    EXPECT_NEAR(ls.x[1], 2.0, 1e-13);
    EXPECT_NEAR(ls.residual, 0.0, 1e-13);
    EXPECT_FALSE(ls.rank_deficient);

    const RealMatrix dup(2, 2, {1.0, 1.0, 0.0, 0.0});
    const auto d = least_squares(dup, std::vector<double>{1.0, 1.0});
    EXPECT_TRUE(d.rank_deficient);
    EXPECT_NEAR(d.residual, 1.0, 1e-13);
}

TEST(LeastSquares, ComplexNormalEquations) {
    Rng rng(8);
    const auto a = random_matrix(6, 3, rng);
    const auto b = random_matrix(6, 1, rng).column(0);
    const auto ls = least_squares(a, std::span<const Complex>(b));
    // Residual orthogonal to the column space.
    auto r = b;
    const auto ax = a * std::span<const Complex>(ls.x);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= ax[i];
    }
    const auto g = a.adjoint() * std::span<const Complex>(r);
    EXPECT_LT(norm2(g), 1e-12);
    EXPECT_NEAR(ls.residual, norm2(r), 1e-12);
}

TEST(Nnls, ClassicExample) {
    // Unconstrained optimum has a negative coordinate; NNLS clamps it.
    const RealMatrix a(3, 2, {1.0, 0.0, 0.0, 1.0, 0.0, 0.0});
    const std::vector<double> b{2.0, -1.0, 0.0};
    const auto s = nnls_feasible(a, b);
    EXPECT_NEAR(s.weights[0], 2.0, 1e-14);
    EXPECT_NEAR(s.weights[1], 0.0, 1e-14);
    EXPECT_NEAR(s.residual, 1.0, 1e-14);
}

TEST(Nnls, KktConditionsOnRandomProblems) {
    Rng rng(21);
    const auto n = [](Rng& g) { return random::complex_gaussian(g).real(); };
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = 6 + trial % 5;
        const std::size_t k = 3 + trial % 7;
        RealMatrix a(m, k);
        for (auto& x : a.entries()) {
            x = n(rng);
        }
        std::vector<double> b(m);
        for (auto& x : b) {
            x = n(rng);
        }
        const auto s = nnls_feasible(a, b);
        std::vector<double> r(b);
        const auto ax = a * std::span<const double>(s.weights);
        for (std::size_t i = 0; i < m; ++i) {
            r[i] -= ax[i];
        }
        for (std::size_t j = 0; j < k; ++j) {
            double g = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                g += a(i, j) * r[i];
            }
            EXPECT_GE(s.weights[j], 0.0);
            EXPECT_LT(g, 1e-9);
            if (s.weights[j] > 0.0) {
                EXPECT_NEAR(g, 0.0, 1e-9);
            }
        }
    }
}

TEST(Nnls, ZeroRhsGivesZeroWeights) {
    const RealMatrix a(2, 2, {1.0, 0.0, 0.0, 1.0});
    const auto s = nnls_feasible(a, std::vector<double>{0.0, 0.0});
    EXPECT_EQ(s.weights, (std::vector<double>{0.0, 0.0}));
}

TEST(Realify, IsFrobeniusIsometry) {
    Rng rng(2);
    const auto h = random_hermitian(4, rng);
    const auto r = realify(h);
    EXPECT_EQ(r.size(), 16u);
    double s = 0.0;
    for (double x : r) {
        s += x * x;
    }
    EXPECT_NEAR(std::sqrt(s), h.frobenius_norm(), 1e-12);
}

TEST(HermitianInverse, InvertsAndRejectsSingular) {
    const ComplexMatrix m(2, 2, {2.0, Complex{0, 1}, Complex{0, -1}, 2.0});
    const auto inv = hermitian_inverse(m);
    EXPECT_LT((m * inv - ComplexMatrix::identity(2)).frobenius_norm(), 1e-13);
    const ComplexMatrix s(2, 2, {1.0, 1.0, 1.0, 1.0});
    EXPECT_THROW(hermitian_inverse(s), Error);
}

TEST(Orthonormalize, CompletesDependentColumns) {
    const ComplexMatrix m(3, 3, {1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
    const auto q = orthonormalize_columns(m);
    EXPECT_LT((q.adjoint() * q - ComplexMatrix::identity(3)).frobenius_norm(), 1e-12);
}

TEST(VecPNorm, AxiomsOnRandomPairs) {
    Rng rng(31);
    const double ps[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
    const auto t = random_matrix(4, 4, rng);
    for (int trial = 0; trial < 1000; ++trial) {
        ComplexVector x(4);
        ComplexVector y(4);
        for (std::size_t i = 0; i < 4; ++i) {
            x[i] = random::complex_gaussian(rng);
            y[i] = random::complex_gaussian(rng);
        }
        ComplexVector sum(4);
        for (std::size_t i = 0; i < 4; ++i) {
            sum[i] = x[i] + y[i];
        }
        const Complex c = random::complex_gaussian(rng);
        ComplexVector scaled(4);
        for (std::size_t i = 0; i < 4; ++i) {
            scaled[i] = c * x[i];
        }
        const double p = ps[trial % 5];
        const auto nx = vec_p_norm(std::span<const Complex>(x), p);
        const auto ny = vec_p_norm(std::span<const Complex>(y), p);
        EXPECT_GT(nx, 0.0);
        EXPECT_LE(vec_p_norm(std::span<const Complex>(sum), p), nx + ny + 1e-12 * (nx + ny));
        EXPECT_NEAR(vec_p_norm(std::span<const Complex>(scaled), p), std::abs(c) * nx, 1e-12 * std::abs(c) * nx);

        const auto tx = transformed_norm(x, t, p);
        const auto ty = transformed_norm(y, t, p);
        EXPECT_GT(tx, 0.0);
        EXPECT_LE(transformed_norm(sum, t, p), tx + ty + 1e-12 * (tx + ty));
        EXPECT_NEAR(transformed_norm(scaled, t, p), std::abs(c) * tx, 1e-12 * std::abs(c) * tx);
    }
    const ComplexVector zero(4, 0.0);
    EXPECT_EQ(vec_p_norm(std::span<const Complex>(zero), 2.0), 0.0);
    EXPECT_EQ(transformed_norm(zero, t, 1.0), 0.0);
}

TEST(EpsRank, MonotoneInTolerance) {
    Rng rng(4);
    std::vector<double> v(12);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = std::pow(10.0, -static_cast<double>(i)) * random::uniform(rng, 0.5, 1.0);
    }
    std::size_t previous = v.size() + 1;
    for (double tol = 1e-14; tol <= 1.0; tol *= 3.0) {
        const auto r = eps_rank(v, tol);
        EXPECT_LE(r, previous);
        previous = r;
    }
}

TEST(Nnls, RecoversNonnegativeCombinationsAndNeverExceedsRhsNorm) {
    Rng rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 8;
        const std::size_t k = 2 + trial % 5;
        RealMatrix a(m, k);
        for (auto& x : a.entries()) {
            x = random::complex_gaussian(rng).real();
        }
        std::vector<double> w(k);
        for (auto& x : w) {
            x = random::uniform(rng);
        }
        const auto b = a * std::span<const double>(w);
        const auto s = nnls_feasible(a, b);
        EXPECT_LT(s.residual, 1e-10 * std::max(1.0, vec_p_norm(std::span<const double>(b), 2.0)));

        std::vector<double> noise(m);
        for (auto& x : noise) {
            x = random::complex_gaussian(rng).real();
        }
        EXPECT_LE(nnls_feasible(a, noise).residual, vec_p_norm(std::span<const double>(noise), 2.0) * (1.0 + 1e-12));
    }
}
