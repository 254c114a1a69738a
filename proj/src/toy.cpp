#include "qorder/toy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "qorder/error.hpp"
#include "qorder/linalg.hpp"

namespace qorder::toy {

namespace {

constexpr std::size_t kAngleGrid = 4096;
constexpr double kAngleTolerance = 1e-12;
constexpr std::size_t kRefinedBasins = 3;

struct AngleMinimum {
    double theta;
    double value;
};

AngleMinimum golden_section(const std::function<double(double)>& f, double lo, double hi) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > kAngleTolerance) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double mid = 0.5 * (a + b);
    return {mid, f(mid)};
}

// Global minimum of a continuous function on the circle [0, 2 pi).
AngleMinimum minimize_on_circle(const std::function<double(double)>& f) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(kAngleGrid);
    std::vector<double> values(kAngleGrid);
    for (std::size_t k = 0; k < kAngleGrid; ++k) {
        values[k] = f(step * static_cast<double>(k));
    }
    std::vector<std::size_t> local;
    for (std::size_t k = 0; k < kAngleGrid; ++k) {
        const double prev = values[(k + kAngleGrid - 1) % kAngleGrid];
        const double next = values[(k + 1) % kAngleGrid];
        if (values[k] <= prev && values[k] <= next) {
            local.push_back(k);
        }
    }
    std::sort(local.begin(), local.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    if (local.size() > kRefinedBasins) {
        local.resize(kRefinedBasins);
    }
    AngleMinimum best{0.0, values[0]};
    for (std::size_t k = 0; k < kAngleGrid; ++k) {
        if (values[k] < best.value) {
            best = {step * static_cast<double>(k), values[k]};
        }
    }
    for (std::size_t k : local) {
        const double center = step * static_cast<double>(k);
        const auto refined = golden_section(f, center - step, center + step);
        if (refined.value < best.value) {
            best = refined;
        }
    }
    return best;
}

DiskDistance minimize_over_disk(Vec2 y, const Disk& disk, const std::function<double(Vec2)>& norm_of_difference) {
    if (disk.contains(y)) {
        return {0.0, y};
    }
    const double r = disk.radius();
    const auto along_boundary = [&](double theta) {
        const Vec2 x{r * std::cos(theta), r * std::sin(theta)};
        return norm_of_difference({y.x1 - x.x1, y.x2 - x.x2});
    };
    const auto best = minimize_on_circle(along_boundary);
    return {best.value, {r * std::cos(best.theta), r * std::sin(best.theta)}};
}

double p_norm2(Vec2 v, double p) {
    const double xs[2] = {v.x1, v.x2};
    return linalg::vec_p_norm(std::span<const double>(xs, 2), p);
}

} // namespace

Disk::Disk(double radius) : radius_(radius) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw Error(ErrorCode::InvalidArgument, "disk radius must be positive and finite");
    }
}

bool Disk::contains(Vec2 y) const { return std::hypot(y.x1, y.x2) <= radius_; }

ToyMap::ToyMap(double a11, double a12, double a21, double a22) : m_{a11, a12, a21, a22} {
    for (double v : m_) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, "toy map entries must be finite");
        }
    }
    const double fro_sq = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
    const double det = a11 * a22 - a12 * a21;
    const double disc = std::sqrt(std::max(0.0, fro_sq * fro_sq - 4.0 * det * det));
    const double s_max = std::sqrt(0.5 * (fro_sq + disc));
    const double s_min = std::sqrt(std::max(0.0, 0.5 * (fro_sq - disc)));
    if (s_min == 0.0 || s_max / s_min >= 1e12) {
        throw Error(ErrorCode::SingularMap, "toy map is not numerically invertible");
    }
}

Vec2 ToyMap::apply(Vec2 v) const { return {m_[0] * v.x1 + m_[1] * v.x2, m_[2] * v.x1 + m_[3] * v.x2}; }

DiskDistance disk_distance(Vec2 y, const Disk& disk, double p) {
    if (!(p >= 1.0)) {
        throw Error(ErrorCode::BadExponent, "p-norm requires p >= 1");
    }
    return minimize_over_disk(y, disk, [p](Vec2 d) { return p_norm2(d, p); });
}

DiskDistance disk_distance_transformed(Vec2 y, const Disk& disk, const ToyMap& t) {
    return minimize_over_disk(y, disk, [&t](Vec2 d) {
        const Vec2 td = t.apply(d);
        return std::hypot(td.x1, td.x2);
    });
}

std::string describe(const ToyNorm& norm) {
    if (const auto* p = std::get_if<PNormSpec>(&norm)) {
        if (std::isinf(p->p)) {
            return "p=inf";
        }
        std::ostringstream os;
        os << "p=" << p->p;
        return os.str();
    }
    const auto& m = std::get<ToyMap>(norm).entries();
    std::ostringstream os;
    os << "map=[" << m[0] << "," << m[1] << ";" << m[2] << "," << m[3] << "]";
    return os.str();
}

double distance_under(Vec2 y, const Disk& disk, const ToyNorm& norm) {
    if (const auto* p = std::get_if<PNormSpec>(&norm)) {
        return disk_distance(y, disk, p->p).distance;
    }
    return disk_distance_transformed(y, disk, std::get<ToyMap>(norm)).distance;
}

AmbiguityReport ambiguity_report(const std::vector<Vec2>& points, const std::vector<ToyNorm>& norms, const Disk& disk,
                                 double tie_tol) {
    AmbiguityReport report;
    const std::size_t n = points.size();
    for (const auto& norm : norms) {
        NormRanking ranking;
        ranking.norm_label = describe(norm);
        for (const auto& y : points) {
            ranking.distances.push_back(distance_under(y, disk, norm));
        }
        ranking.relation.assign(n, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double diff = ranking.distances[i] - ranking.distances[j];
                ranking.relation[i][j] = std::abs(diff) <= tie_tol ? 0 : (diff < 0.0 ? -1 : 1);
            }
        }
        report.rankings.push_back(std::move(ranking));
    }
    for (std::size_t a = 0; a < norms.size(); ++a) {
        for (std::size_t b = a + 1; b < norms.size(); ++b) {
            if (report.rankings[a].relation != report.rankings[b].relation) {
                report.disagreements.push_back({a, b});
            }
        }
    }
    return report;
}

Vec2 point_y1() { return {1.0, 0.0}; }

Vec2 point_y2() { return {std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0}; }

Vec2 point_y3(double epsilon) { return {0.0, 0.5 * (1.0 + epsilon)}; }

std::array<ToyMap, 3> scaling_maps(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "epsilon must satisfy 0 < epsilon < 1");
    }
    return {ToyMap::identity(), ToyMap::diag(1.0, 1.0 / epsilon), ToyMap::diag(epsilon, 1.0 / epsilon)};
}

} // namespace qorder::toy
