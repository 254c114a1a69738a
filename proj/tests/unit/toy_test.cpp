#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qorder/error.hpp"
#include "qorder/linalg.hpp"
#include "qorder/toy.hpp"

using namespace qorder;
using namespace qorder::toy;

namespace {

constexpr double kInf = linalg::kInfinity;

// Brute-force minimum over the boundary circle; the minimizer of any norm
// distance from an outside point lies there.
double sampled_distance(Vec2 y, double radius, double p, int samples = 200000) {
    double best = INFINITY;
    for (int k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / samples;
        const double dx = std::abs(y.x1 - radius * std::cos(t));
        const double dy = std::abs(y.x2 - radius * std::sin(t));
        double d = 0.0;
        if (p == kInf) {
            d = std::max(dx, dy);
        } else {
            d = std::pow(std::pow(dx, p) + std::pow(dy, p), 1.0 / p);
        }
        best = std::min(best, d);
    }
    return best;
}

} // namespace

TEST(Disk, RejectsNonPositiveRadius) {
    EXPECT_THROW(Disk(0.0), Error);
    EXPECT_THROW(Disk(-1.0), Error);
}

TEST(DiskDistance, ReferencePointsEuclidean) {
    const Disk disk;
    EXPECT_NEAR(disk_distance(point_y1(), disk, 2.0).distance, 0.5, 1e-9);
    EXPECT_NEAR(disk_distance(point_y2(), disk, 2.0).distance, 0.5, 1e-9);
}

TEST(DiskDistance, ReferencePointsOneAndMax) {
    const Disk disk;
    EXPECT_NEAR(disk_distance(point_y1(), disk, 1.0).distance, 0.5, 1e-9);
    EXPECT_NEAR(disk_distance(point_y2(), disk, 1.0).distance, 1.0 / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(disk_distance(point_y1(), disk, kInf).distance, 0.5, 1e-9);
    EXPECT_NEAR(disk_distance(point_y2(), disk, kInf).distance, 1.0 / (2.0 * std::sqrt(2.0)), 1e-9);
}

TEST(DiskDistance, InteriorPointHasZeroDistance) {
    const auto d = disk_distance({0.1, -0.2}, Disk{}, 1.0);
    EXPECT_EQ(d.distance, 0.0);
    EXPECT_EQ(d.argmin.x1, 0.1);
}

TEST(DiskDistance, ArgminOnBoundary) {
    const auto d = disk_distance({0.9, 0.3}, Disk{}, 3.0);
    EXPECT_NEAR(std::hypot(d.argmin.x1, d.argmin.x2), 0.5, 1e-12);
}

TEST(DiskDistance, AgreesWithSampledBoundaryOnRandomPoints) {
    const double pts[][2] = {{0.7, 0.2}, {-1.3, 0.4}, {0.2, -0.9}, {2.0, 2.0}, {-0.6, -0.6}};
    for (const auto& pt : pts) {
        for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) {
            const Vec2 y{pt[0], pt[1]};
            const double fast = disk_distance(y, Disk{}, p).distance;
            const double slow = sampled_distance(y, 0.5, p);
            EXPECT_LE(fast, slow + 1e-12);
            // Sampling error is first order where the p-norm has a kink.
            EXPECT_NEAR(fast, slow, 1e-6) << "p=" << p;
        }
    }
}

TEST(DiskDistance, BadExponentRejected) {
    EXPECT_THROW(disk_distance(point_y1(), Disk{}, 0.5), Error);
}

TEST(ToyMap, SingularMapRejected) {
    EXPECT_THROW(ToyMap(1.0, 2.0, 2.0, 4.0), Error);
}

TEST(TransformedDistance, SignPatternAcrossScalingMaps) {
    const double eps = 0.5;
    const auto maps = scaling_maps(eps);
    const Disk disk;
    const double expected[3][2] = {{0.5, eps / 2}, {0.5, 0.5}, {eps / 2, 0.5}};
    for (std::size_t i = 0; i < 3; ++i) {
        const double d1 = disk_distance_transformed(point_y1(), disk, maps[i]).distance;
        const double d3 = disk_distance_transformed(point_y3(eps), disk, maps[i]).distance;
        EXPECT_NEAR(d1, expected[i][0], 1e-9) << "map " << i;
        EXPECT_NEAR(d3, expected[i][1], 1e-9) << "map " << i;
    }
}

TEST(TransformedDistance, PatternHoldsForOtherEpsilon) {
    for (double eps : {0.1, 0.3, 0.9}) {
        const auto maps = scaling_maps(eps);
        const Disk disk;
        const auto gap = [&](std::size_t i) {
            return disk_distance_transformed(point_y1(), disk, maps[i]).distance -
                   disk_distance_transformed(point_y3(eps), disk, maps[i]).distance;
        };
        EXPECT_GT(gap(0), 1e-9);
        EXPECT_NEAR(gap(1), 0.0, 1e-9);
        EXPECT_LT(gap(2), -1e-9);
    }
}

TEST(ScalingMaps, EpsilonOutsideUnitIntervalRejected) {
    EXPECT_THROW(scaling_maps(0.0), Error);
    EXPECT_THROW(scaling_maps(1.5), Error);
}

TEST(Ambiguity, OneAndMaxNormsDisagree) {
    const std::vector<Vec2> pts{point_y1(), point_y2()};
    const std::vector<ToyNorm> norms{PNormSpec{2.0}, PNormSpec{1.0}, PNormSpec{kInf}};
    const auto report = ambiguity_report(pts, norms);
    ASSERT_EQ(report.rankings.size(), 3u);
    EXPECT_EQ(report.rankings[0].relation[0][1], 0);
    EXPECT_EQ(report.rankings[1].relation[0][1], -1);
    EXPECT_EQ(report.rankings[2].relation[0][1], 1);
    EXPECT_TRUE(report.ambiguous());
}

TEST(Ambiguity, SingleNormIsNeverAmbiguous) {
    const std::vector<Vec2> pts{point_y1(), point_y2(), point_y3(0.5)};
    const auto report = ambiguity_report(pts, {PNormSpec{2.0}});
    EXPECT_FALSE(report.ambiguous());
}

TEST(DiskDistance, ArgminAttainsReportedDistance) {
    const double pts[][2] = {{0.9, 0.3}, {-1.1, 0.05}, {0.4, -0.8}, {1.5, 1.5}};
    for (const auto& pt : pts) {
        for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
            const Vec2 y{pt[0], pt[1]};
            const auto d = disk_distance(y, Disk{}, p);
            const double diff[] = {y.x1 - d.argmin.x1, y.x2 - d.argmin.x2};
            EXPECT_NEAR(linalg::vec_p_norm(std::span<const double>(diff), p), d.distance, 1e-9);
            EXPECT_LE(std::hypot(d.argmin.x1, d.argmin.x2), 0.5 + 1e-12);
        }
    }
}

TEST(DiskDistance, HomogeneousUnderJointScaling) {
    const Vec2 y{0.8, -0.45};
    for (double p : {1.0, 2.0, 3.0, kInf}) {
        const double base = disk_distance(y, Disk{0.5}, p).distance;
        for (double c : {0.1, 2.0, 7.5}) {
            const double scaled = disk_distance({c * y.x1, c * y.x2}, Disk{0.5 * c}, p).distance;
            EXPECT_NEAR(scaled, c * base, 1e-9 * c) << "p=" << p << " c=" << c;
        }
    }
}

TEST(TransformedDistance, AgreesWithDenseBoundarySampling) {
    const ToyMap maps[] = {ToyMap::diag(1.0, 0.3), ToyMap(1.0, 0.4, -0.2, 0.7), ToyMap(2.0, 1.0, 0.0, 0.5)};
    const Vec2 pts[] = {{0.7, 0.2}, {-0.9, 0.6}, {0.1, -1.2}};
    constexpr int kSamples = 1000000;
    for (const auto& t : maps) {
        for (const auto& y : pts) {
            double slow = INFINITY;
            for (int k = 0; k < kSamples; ++k) {
                const double a = 2.0 * std::numbers::pi * k / kSamples;
                const auto v = t.apply({y.x1 - 0.5 * std::cos(a), y.x2 - 0.5 * std::sin(a)});
                slow = std::min(slow, std::hypot(v.x1, v.x2));
            }
            const double fast = disk_distance_transformed(y, Disk{}, t).distance;
            EXPECT_LE(fast, slow + 1e-12);
            EXPECT_NEAR(fast, slow, 1e-6);
        }
    }
}
