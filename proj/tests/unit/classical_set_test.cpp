#include <gtest/gtest.h>

#include <cmath>

#include "qorder/classical_set.hpp"
#include "qorder/random.hpp"

using namespace qorder;

namespace {

ClassicalSetModel diagonal_qubit() { return custom_set({PureState::basis(2, 0), PureState::basis(2, 1)}); }

ComplexVector bell() {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, 0.0, 0.0, s};
}

} // namespace

TEST(ClassicalSet, EmptySetRejected) {
    try {
        custom_set({});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptySet);
    }
}

TEST(ClassicalSet, MixedDimensionsRejected) {
    EXPECT_THROW(custom_set({PureState::basis(2, 0), PureState::basis(3, 0)}), Error);
}

TEST(ClassicalSet, DuplicatesUpToPhaseAreDropped) {
    const auto set = custom_set({PureState::basis(2, 0), PureState(ComplexVector{Complex{0, 2}, 0.0}),
                                 PureState::basis(2, 1)});
    EXPECT_EQ(set.size(), 2u);
}

TEST(Membership, GeneratorsAndMixturesAreInside) {
    const auto set = product_grid(BipartiteShape(2, 2), 40, 3);
    Rng rng(9);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const auto m = membership(DensityMatrix::unchecked(set.projector(i)), set);
        EXPECT_TRUE(m.inside);
        EXPECT_LE(m.residual, 1e-10);
    }
    const auto w = random::simplex_weights(set.size(), rng);
    const auto m = membership(set.hull_point(w), set);
    EXPECT_TRUE(m.inside);
}

TEST(Membership, DiagonalSetRejectsCoherence) {
    const auto set = diagonal_qubit();
    const double s = 1.0 / std::sqrt(2.0);
    const auto plus = from_pure(PureState(ComplexVector{s, s}));
    const auto m = membership(plus, set);
    EXPECT_FALSE(m.inside);
    // Closest diagonal matrix leaves the off-diagonal 1/2 entries: residual 1/sqrt2.
    EXPECT_NEAR(m.residual, s, 1e-12);
    EXPECT_TRUE(membership(maximally_mixed(2), set).inside);
}

TEST(Membership, BellStateOutsideProductGrid) {
    const auto set = product_grid(BipartiteShape(2, 2), 200, 1);
    const auto m = membership(from_pure(PureState(bell())), set);
    EXPECT_FALSE(m.inside);
    EXPECT_GT(m.residual, 0.1);
}

TEST(Membership, UnnormalizedStatesUseRelativeTolerance) {
    const auto set = diagonal_qubit();
    const auto rho = DensityMatrix(ComplexMatrix(2, 2, {3.0, 0.0, 0.0, 1.0}));
    const auto m = membership(rho, set);
    EXPECT_TRUE(m.inside);
    EXPECT_NEAR(m.weights[0] + m.weights[1], 4.0, 1e-10);
}

TEST(CoherentGrid, TruncationGuard) {
    try {
        coherent_grid(4, {Complex{2.0, 0.0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TruncationTooSmall);
    }
    EXPECT_THROW(coherent_grid(0, {Complex{0.1, 0.0}}), Error);
    EXPECT_NO_THROW(coherent_grid(16, {Complex{2.0, 0.0}, Complex{-2.0, 0.0}}));
}

TEST(CoherentGrid, OverlapMatchesAnalyticValue) {
    // <alpha|beta> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b) up to truncation error.
    const Complex a{0.8, 0.3};
    const Complex b{-0.4, 0.5};
    const auto va = coherent_state(30, a);
    const auto vb = coherent_state(30, b);
    const Complex exact = std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
    EXPECT_LT(std::abs(inner(va, vb) - exact), 1e-12);
}

TEST(ProductGrid, DeterministicForSeed) {
    const auto a = product_grid(BipartiteShape(2, 2), 16, 42);
    const auto b = product_grid(BipartiteShape(2, 2), 16, 42);
    const auto c = product_grid(BipartiteShape(2, 2), 16, 43);
    EXPECT_EQ(a.generator_matrix(), b.generator_matrix());
    EXPECT_NE(a.generator_matrix(), c.generator_matrix());
}

TEST(ProductGrid, TooFewGeneratorsRejected) {
    EXPECT_THROW(product_grid(BipartiteShape(2, 2), 15, 1), Error);
}

TEST(ProductGrid, GeneratorsAreProductStates) {
    const auto set = product_grid(BipartiteShape(2, 3), 36, 5);
    for (const auto& g : set.generators()) {
        const auto& v = g.amplitudes();
        // Rank-one coefficient matrix: all 2x2 minors vanish.
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t k = j + 1; k < 3; ++k) {
                EXPECT_LT(std::abs(v[j] * v[3 + k] - v[k] * v[3 + j]), 1e-14);
            }
        }
    }
}

TEST(HullPoint, NegativeWeightRejected) {
    const auto set = diagonal_qubit();
    EXPECT_THROW(set.hull_point(std::vector<double>{1.0, -0.1}), Error);
    EXPECT_THROW(set.hull_point(std::vector<double>{1.0}), Error);
}

TEST(ClassicalSet, DuplicatesDoNotChangeVerdicts) {
    const auto base = product_grid(BipartiteShape(2, 2), 20, 5);
    auto padded = base.generators();
    for (const auto& g : base.generators()) {
        auto amps = g.amplitudes();
        for (auto& z : amps) {
            z *= std::polar(3.0, 0.7);
        }
        padded.emplace_back(std::move(amps));
    }
    const auto dup = custom_set(padded);
    EXPECT_EQ(dup.size(), base.size());
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        const auto rho = i % 2 == 0 ? base.hull_point(random::simplex_weights(base.size(), rng))
                                    : DensityMatrix(random::density_matrix(4, rng, 1));
        EXPECT_EQ(membership(rho, base).inside, membership(rho, dup).inside) << i;
    }
}

TEST(Membership, EnlargingTheGeneratorFamilyIsMonotone) {
    const auto small = product_grid(BipartiteShape(2, 2), 16, 2);
    auto more = small.generators();
    const auto extra = product_grid(BipartiteShape(2, 2), 30, 3);
    for (const auto& g : extra.generators()) {
        more.push_back(g);
    }
    const auto large = custom_set(more);
    Rng rng(13);
    for (int i = 0; i < 40; ++i) {
        const auto rho = DensityMatrix(random::density_matrix(4, rng, 1 + i % 4));
        const auto a = membership(rho, small);
        const auto b = membership(rho, large);
        EXPECT_LE(b.residual, a.residual + 1e-12) << i;
        if (a.inside) {
            EXPECT_TRUE(b.inside) << i;
        }
    }
}
