#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <variant>

namespace qorder::verify {

namespace {

double norm_of(double dx, double dy, const toy::ToyNorm& norm) {
    if (const auto* t = std::get_if<toy::ToyMap>(&norm)) {
        const auto& m = t->entries();
        return std::hypot(m[0] * dx + m[1] * dy, m[2] * dx + m[3] * dy);
    }
    const double p = std::get<toy::PNormSpec>(norm).p;
    dx = std::abs(dx);
    dy = std::abs(dy);
    if (std::isinf(p)) {
        return std::max(dx, dy);
    }
    return std::pow(std::pow(dx, p) + std::pow(dy, p), 1.0 / p);
}

} // namespace

double sampled_disk_distance(toy::Vec2 y, double radius, const toy::ToyNorm& norm, std::size_t samples) {
    if (std::hypot(y.x1, y.x2) <= radius) {
        return 0.0;
    }
    double best = INFINITY;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        best = std::min(best, norm_of(y.x1 - radius * std::cos(t), y.x2 - radius * std::sin(t), norm));
    }
    return best;
}

GridOracleResult grid_membership(const DensityMatrix& rho, const ClassicalSetModel& set, double step, double tol) {
    const std::size_t k = set.size();
    const auto n = static_cast<std::size_t>(std::lround(1.0 / step));
    const double tr = rho.trace();
    const std::size_t d = rho.dim();

    GridOracleResult out;
    out.best_residual = INFINITY;
    std::vector<std::size_t> parts(k, 0);
    // Enumerate compositions of n into k parts in lexicographic order.
    auto visit = [&] {
        ComplexMatrix diff = rho.matrix();
        for (std::size_t i = 0; i < k; ++i) {
            if (parts[i] != 0) {
                diff -= set.projector(i) * Complex{tr * static_cast<double>(parts[i]) / static_cast<double>(n)};
            }
        }
        double s = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                s += std::norm(diff(r, c));
            }
        }
        out.best_residual = std::min(out.best_residual, std::sqrt(s) / tr);
        ++out.points;
    };
    auto recurse = [&](auto&& self, std::size_t i, std::size_t left) -> void {
        if (i + 1 == k) {
            parts[i] = left;
            visit();
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            parts[i] = v;
            self(self, i + 1, left - v);
        }
    };
    recurse(recurse, 0, n);
    out.inside = out.best_residual <= tol;
    return out;
}

ComplexVector function_image_coefficients(std::span<const Complex> x, std::span<const Complex> a,
                                          std::span<const std::size_t> f) {
    ComplexVector out(x.size(), Complex{});
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[f[j]] += a[j] * x[j];
    }
    return out;
}

} // namespace qorder::verify
