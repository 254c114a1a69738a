#include "qorder/random.hpp"

#include <cmath>
#include <numbers>

#include "qorder/error.hpp"
#include "qorder/linalg.hpp"

namespace qorder {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the combined key
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace random {

double uniform(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform(rng); }

std::size_t uniform_index(Rng& rng, std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "uniform_index needs a positive range");
    }
    // Rejection sampling removes the modulo bias.
    const std::uint64_t limit = Rng::max() - Rng::max() % n;
    std::uint64_t x = rng();
    while (x >= limit) {
        x = rng();
    }
    return static_cast<std::size_t>(x % n);
}

Complex complex_gaussian(Rng& rng) {
    // Box-Muller; 1 - u keeps the logarithm finite.
    const double r = std::sqrt(-2.0 * std::log(1.0 - uniform(rng)));
    const double t = 2.0 * std::numbers::pi * uniform(rng);
    return {r * std::cos(t), r * std::sin(t)};
}

ComplexVector haar_state(std::size_t dim, Rng& rng) {
    ComplexVector v(dim);
    double n = 0.0;
    while (n < 1e-8) {
        for (auto& z : v) {
            z = complex_gaussian(rng);
        }
        n = norm2(v);
    }
    for (auto& z : v) {
        z /= n;
    }
    return v;
}

ComplexMatrix density_matrix(std::size_t dim, Rng& rng, std::size_t rank) {
    if (rank == 0 || rank > dim) {
        rank = dim;
    }
    ComplexMatrix g(dim, rank);
    for (auto& z : g.entries()) {
        z = complex_gaussian(rng);
    }
    ComplexMatrix rho = g * g.adjoint();
    rho *= Complex{1.0 / rho.trace().real()};
    return rho;
}

RealVector simplex_weights(std::size_t count, Rng& rng) {
    RealVector w(count);
    double total = 0.0;
    for (auto& x : w) {
        x = -std::log(1.0 - uniform(rng));
        total += x;
    }
    for (auto& x : w) {
        x /= total;
    }
    return w;
}

ComplexMatrix isometry(std::size_t rows, std::size_t cols, Rng& rng) {
    if (cols > rows) {
        throw Error(ErrorCode::ShapeMismatch, "isometry needs rows >= cols");
    }
    ComplexMatrix g(rows, cols);
    for (auto& z : g.entries()) {
        z = complex_gaussian(rng);
    }
    return linalg::orthonormalize_columns(g);
}

} // namespace random
} // namespace qorder
