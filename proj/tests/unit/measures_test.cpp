#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "qorder/linalg.hpp"
#include "qorder/measures.hpp"
#include "qorder/random.hpp"

using namespace qorder;

namespace {

const BipartiteShape k2x2{2, 2};

PureState bell() {
    const double s = 1.0 / std::sqrt(2.0);
    return PureState(ComplexVector{s, 0.0, 0.0, s}, k2x2);
}

ComplexMatrix reconstruct(const Decomposition& d, std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < d.states.size(); ++i) {
        m += outer(d.states[i].amplitudes(), d.states[i].amplitudes()) * Complex{d.probabilities[i]};
    }
    return m;
}

} // namespace

TEST(Count, OrderingAndInfinity) {
    EXPECT_LT(Count(1), Count(2));
    EXPECT_LT(Count(100), Count::infinity());
    EXPECT_FALSE(Count::infinity() < Count::infinity());
    EXPECT_EQ(Count::infinity().to_string(), "inf");
    EXPECT_THROW(Count::infinity().value(), Error);
}

TEST(FMap, KnownValues) {
    EXPECT_EQ(f_map(0), 0.0);
    EXPECT_EQ(f_map(1), 0.5);
    EXPECT_EQ(f_map(Count::infinity()), 1.0);
    double prev = -1.0;
    for (std::size_t n = 0; n < 50; ++n) {
        const double v = f_map(n);
        EXPECT_GT(v, prev);
        EXPECT_LT(v, 1.0);
        prev = v;
    }
}

TEST(SuperpositionRank, ProductAndBell) {
    const auto model = MeasureModel::bipartite(k2x2);
    EXPECT_EQ(superposition_rank(PureState::basis(4, 0), model), Count(1));
    EXPECT_EQ(superposition_rank(bell(), model), Count(2));
}

TEST(SuperpositionRank, WStateAcrossOneVersusTwoThree) {
    const double s = 1.0 / std::sqrt(3.0);
    ComplexVector w(8);
    w[1] = w[2] = w[4] = s;
    EXPECT_EQ(superposition_rank(PureState(w), MeasureModel::bipartite({2, 4})), Count(2));
}

TEST(SuperpositionRank, CatStateOverCoherentPair) {
    const auto set = coherent_grid(16, {Complex{2.0, 0.0}, Complex{-2.0, 0.0}});
    const auto model = MeasureModel::dictionary(set);
    const auto a = coherent_state(16, {2.0, 0.0});
    const auto b = coherent_state(16, {-2.0, 0.0});
    ComplexVector cat(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        cat[i] = a[i] + b[i];
    }
    EXPECT_EQ(superposition_rank(PureState(cat), model), Count(2));
    EXPECT_EQ(superposition_rank(PureState(a), model), Count(1));
}

TEST(SuperpositionRank, OutsideSpanIsInfinite) {
    const auto set = custom_set({PureState::basis(3, 0), PureState::basis(3, 1)});
    EXPECT_TRUE(superposition_rank(PureState::basis(3, 2), MeasureModel::dictionary(set)).is_infinite());
}

TEST(SuperpositionRank, CapAboveTwelveRejected) {
    const auto set = custom_set({PureState::basis(2, 0)});
    EXPECT_THROW(superposition_rank(PureState::basis(2, 0), MeasureModel::dictionary(set), 13), Error);
}

TEST(SuperpositionRank, CapExceededIsInfinite) {
    std::vector<PureState> basis;
    for (std::size_t k = 0; k < 4; ++k) {
        basis.push_back(PureState::basis(4, k));
    }
    const auto set = custom_set(basis);
    const PureState uniform(ComplexVector(4, 0.5));
    EXPECT_EQ(superposition_rank(uniform, MeasureModel::dictionary(set), 4), Count(4));
    EXPECT_TRUE(superposition_rank(uniform, MeasureModel::dictionary(set), 3).is_infinite());
}

TEST(SuperpositionRank, ExhaustiveBeatsGreedy) {
    // psi = c0 + c1 where a decoy generator has the largest overlap with psi.
    const double s = 1.0 / std::sqrt(2.0);
    const PureState c0(ComplexVector{1.0, 0.0, 0.0});
    const PureState c1(ComplexVector{0.0, 1.0, 0.0});
    const PureState decoy(ComplexVector{s, s * 0.999, 0.0447});
    const auto set = custom_set({decoy, c0, c1, PureState::basis(3, 2)});
    EXPECT_EQ(superposition_rank(PureState(ComplexVector{1.0, 1.0, 0.0}), MeasureModel::dictionary(set)), Count(2));
}

TEST(SuperpositionRank, DictionaryAgreesWithSchmidtOnProductBasis) {
    std::vector<PureState> basis;
    for (std::size_t k = 0; k < 4; ++k) {
        basis.push_back(PureState::basis(4, k));
    }
    // The computational product basis plus the product of |+> states spans the same product vectors
    // needed for these test states.
    const auto set = custom_set(basis);
    const auto dict = MeasureModel::dictionary(set);
    const auto schmidt = MeasureModel::bipartite(k2x2);
    const std::vector<ComplexVector> states{{1.0, 0.0, 0.0, 0.0}, {1.0, 0.0, 0.0, 1.0}, {0.0, 1.0, 1.0, 0.0}};
    for (const auto& v : states) {
        EXPECT_EQ(superposition_rank(PureState(v), dict), superposition_rank(PureState(v), schmidt));
    }
}

TEST(MuPure, BellAndProduct) {
    const auto model = MeasureModel::bipartite(k2x2);
    const auto b = mu_pure(bell(), model);
    EXPECT_EQ(b.mu_upper, Count(1));
    EXPECT_EQ(b.mu_lower, Count(1));
    EXPECT_NEAR(b.f_mu, 0.5, 1e-12);
    const auto p = mu_pure(PureState::basis(4, 0), model);
    EXPECT_EQ(p.mu_upper, Count(0));
    EXPECT_EQ(p.f_mu, 0.0);
}

TEST(MuMixed, HullStateIsZero) {
    const auto set = product_grid(k2x2, 40, 2);
    Rng rng(3);
    const auto g = set.hull_point(random::simplex_weights(set.size(), rng));
    const auto r = mu_mixed(g, MeasureModel::dictionary(set));
    EXPECT_EQ(r.mu_lower, Count(0));
    EXPECT_EQ(r.mu_upper, Count(0));
    EXPECT_LT((reconstruct(r.certificate, 4) - g.matrix()).frobenius_norm(), 1e-7);
}

TEST(MuMixed, HalfBellHalfProduct) {
    const auto rho = mix(std::vector<DensityMatrix>{from_pure(bell()), from_pure(PureState::basis(4, 0))},
                         std::vector<double>{0.5, 0.5});
    const auto r = mu_mixed(rho, MeasureModel::bipartite(k2x2));
    EXPECT_EQ(r.mu_lower, Count(1));
    EXPECT_EQ(r.mu_upper, Count(1));
    EXPECT_LT((reconstruct(r.certificate, 4) - rho.matrix()).frobenius_norm(), 1e-8);
}

TEST(MuMixed, SeparableStateReachesZero) {
    const double h = 0.5;
    const auto plus = from_pure(PureState(ComplexVector{h, h, h, h}));
    const auto rho = mix(std::vector<DensityMatrix>{plus, from_pure(PureState::basis(4, 0))},
                         std::vector<double>{0.5, 0.5});
    const auto r = mu_mixed(rho, MeasureModel::bipartite(k2x2));
    EXPECT_EQ(r.mu_lower, Count(0));
    EXPECT_EQ(r.mu_upper, Count(0));
    EXPECT_LE(r.certificate.reconstruction_error, 1e-8);
    for (const auto& s : r.certificate.states) {
        EXPECT_EQ(superposition_rank(s, MeasureModel::bipartite(k2x2)), Count(1));
    }
}

TEST(MuMixed, PureInputMatchesMuPure) {
    const auto model = MeasureModel::bipartite(k2x2);
    const auto r = mu_mixed(from_pure(bell()), model);
    EXPECT_EQ(r.mu_upper, mu_pure(bell(), model).mu_upper);
}

TEST(MuMixed, SupportOutsideDictionarySpanIsInfinite) {
    const auto set = custom_set({PureState::basis(3, 0), PureState::basis(3, 1)});
    const double s = 1.0 / std::sqrt(2.0);
    const auto rho = from_pure(PureState(ComplexVector{s, 0.0, s}));
    const auto r = mu_mixed(rho, MeasureModel::dictionary(set));
    EXPECT_TRUE(r.mu_lower.is_infinite());
    EXPECT_EQ(r.f_mu, 1.0);
}

TEST(MuMixed, DeterministicAndMonotoneInRestarts) {
    Rng rng(8);
    const auto rho = DensityMatrix::unchecked(random::density_matrix(4, rng, 3));
    MuOptions few;
    few.restarts = 1;
    few.seed = 4;
    MuOptions more = few;
    more.restarts = 6;
    const auto model = MeasureModel::bipartite(k2x2);
    const auto a = mu_mixed(rho, model, few);
    const auto b = mu_mixed(rho, model, few);
    const auto c = mu_mixed(rho, model, more);
    EXPECT_EQ(a.mu_upper, b.mu_upper);
    EXPECT_EQ(a.certificate.probabilities, b.certificate.probabilities);
    EXPECT_LE(c.mu_upper, a.mu_upper);
    EXPECT_LE(c.mu_lower, c.mu_upper);
}

TEST(MuMixed, UnnormalizedRejected) {
    const auto rho = DensityMatrix(ComplexMatrix::identity(4));
    EXPECT_THROW(mu_mixed(rho, MeasureModel::bipartite(k2x2)), Error);
}

TEST(PartialTranspose, BellIsNegativeProductIsNot) {
    EXPECT_NEAR(partial_transpose_min_eigenvalue(from_pure(bell()), k2x2), -0.5, 1e-12);
    EXPECT_GE(partial_transpose_min_eigenvalue(maximally_mixed(4), k2x2), 0.0);
}

TEST(Simplex, ProjectionProperties) {
    const auto p = project_to_simplex(std::vector<double>{0.5, 0.5, 0.5});
    for (double x : p) {
        EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
    }
    const auto q = project_to_simplex(std::vector<double>{2.0, -1.0});
    EXPECT_EQ(q, (std::vector<double>{1.0, 0.0}));
}

TEST(DistanceMeasure, ZeroInsideHullPositiveForBell) {
    const auto set = product_grid(k2x2, 200, 1);
    Rng rng(5);
    const auto g = set.hull_point(random::simplex_weights(set.size(), rng));
    EXPECT_LT(distance_measure(g, set, 2.0).value, 1e-7);
    const auto b = distance_measure(from_pure(bell()), set, 2.0);
    // Regression constant; an independent quadratic program over the same generators agrees to 1e-8.
    EXPECT_NEAR(b.value, 0.600153068, 1e-8);
    EXPECT_NEAR(std::accumulate(b.weights.begin(), b.weights.end(), 0.0), 1.0, 1e-12);
}

TEST(DistanceMeasure, FrozenPairRankedOppositelyByOneAndMaxNorms) {
    // Found by a seeded search over small-integer mixtures and frozen. Reference
    // optima come from a conic solver run on the same 40 generators.
    const auto set = product_grid(k2x2, 40, 11);
    auto proj = [](ComplexVector v) { return from_pure(PureState(std::move(v)).normalized()).matrix(); };
    const auto id = ComplexMatrix::identity(4);
    const auto a = DensityMatrix::unchecked(proj({1.0, 2.0, 1.0, 1.0}) * Complex{0.6} + id * Complex{0.1});
    const auto b = DensityMatrix::unchecked(proj({-2.0, -2.0, -2.0, -1.0}) * Complex{0.5} +
                                            proj({0.0, -2.0, 2.0, 2.0}) * Complex{0.4} + id * Complex{0.025});
    const std::vector<double> ps{1.0, linalg::kInfinity, 2.0};
    const auto cmp = compare_distances(a, b, set, ps);
    EXPECT_EQ(cmp.relation[0], -1);
    EXPECT_EQ(cmp.relation[1], 1);
    EXPECT_TRUE(cmp.ambiguous());

    const double ref_a[] = {0.326837989, 0.151401070, 0.220185951};
    const double ref_b[] = {0.463252814, 0.140689443, 0.258696160};
    for (std::size_t k = 0; k < 3; ++k) {
        // Subgradient values are upper bounds close to the optimum; p = 2 is exact.
        const double slack = ps[k] == 2.0 ? 1e-8 : 5e-3;
        EXPECT_GE(cmp.distance_a[k], ref_a[k] - 1e-6);
        EXPECT_LE(cmp.distance_a[k], ref_a[k] + slack);
        EXPECT_GE(cmp.distance_b[k], ref_b[k] - 1e-6);
        EXPECT_LE(cmp.distance_b[k], ref_b[k] + slack);
    }
}

TEST(DistanceMeasure, SingleExponentNeverAmbiguous) {
    const auto set = product_grid(k2x2, 40, 11);
    const std::vector<double> ps{2.0};
    EXPECT_FALSE(compare_distances(from_pure(bell()), maximally_mixed(4), set, ps).ambiguous());
}

TEST(DistanceMeasure, SubgradientNeverWorseThanStart) {
    const auto set = product_grid(k2x2, 40, 6);
    const auto rho = from_pure(bell());
    const auto two = distance_measure(rho, set, 2.0);
    for (double p : {1.0, linalg::kInfinity}) {
        const double start = linalg::schatten_norm(rho.matrix() - set.hull_point(two.weights).matrix(), p);
        EXPECT_LE(distance_measure(rho, set, p).value, start + 1e-15);
    }
}

TEST(DistanceMeasure, BadExponentRejected) {
    const auto set = custom_set({PureState::basis(2, 0)});
    EXPECT_THROW(distance_measure(maximally_mixed(2), set, 3.0), Error);
}
