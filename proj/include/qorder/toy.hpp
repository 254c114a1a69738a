#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

namespace qorder::toy {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

/// Centered Euclidean disk {x : ||x||_2 <= radius}, the toy "classical set".
class Disk {
  public:
    explicit Disk(double radius = 0.5);
    double radius() const noexcept { return radius_; }
    bool contains(Vec2 y) const;

  private:
    double radius_;
};

/// Invertible real 2x2 map used to reshape the Euclidean norm.
class ToyMap {
  public:
    ToyMap(double a11, double a12, double a21, double a22);
    static ToyMap diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
    static ToyMap identity() { return diag(1.0, 1.0); }

    Vec2 apply(Vec2 v) const;
    const std::array<double, 4>& entries() const noexcept { return m_; }

  private:
    std::array<double, 4> m_;
};

struct DiskDistance {
    double distance = 0.0;
    Vec2 argmin;
};

/// inf_{x in disk} ||y - x||_p. Outside the disk the minimizer sits on the
/// boundary circle and is located by a coarse angle grid refined with
/// golden-section search.
DiskDistance disk_distance(Vec2 y, const Disk& disk, double p);

/// inf_{x in disk} ||T (y - x)||_2, minimized under T directly.
DiskDistance disk_distance_transformed(Vec2 y, const Disk& disk, const ToyMap& t);

struct PNormSpec {
    double p;
};

using ToyNorm = std::variant<PNormSpec, ToyMap>;

std::string describe(const ToyNorm& norm);

/// Distance of y from the disk under any supported norm.
double distance_under(Vec2 y, const Disk& disk, const ToyNorm& norm);

struct NormRanking {
    std::string norm_label;
    std::vector<double> distances;
    /// relation[i][j] = -1 if point i is strictly closer than j, 0 on a tie, +1 otherwise.
    std::vector<std::vector<int>> relation;
};

struct AmbiguityReport {
    std::vector<NormRanking> rankings;
    /// Pairs of norm indices whose induced orderings disagree on some pair of points.
    std::vector<std::array<std::size_t, 2>> disagreements;
    bool ambiguous() const noexcept { return !disagreements.empty(); }
};

AmbiguityReport ambiguity_report(const std::vector<Vec2>& points, const std::vector<ToyNorm>& norms,
                                 const Disk& disk = Disk{}, double tie_tol = 1e-9);

/// The reference points: y1 = (1, 0), y2 = (1, 1)/sqrt2, y3 = (0, (1 + eps)/2).
Vec2 point_y1();
Vec2 point_y2();
Vec2 point_y3(double epsilon);

/// The three scaling maps identity, diag(1, 1/eps) and diag(eps, 1/eps).
std::array<ToyMap, 3> scaling_maps(double epsilon);

} // namespace qorder::toy
