#pragma once

#include <cstdint>
#include <random>

#include "qorder/matrix.hpp"

namespace qorder {

using Rng = std::mt19937_64;

/// Deterministic child seed for stream `index` of a seeded run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

namespace random {

// The std distributions are implementation-defined, so the samplers below are
// built from raw generator output to keep seeded runs identical across toolchains.

/// Uniform in [0, 1) with 53 random bits.
double uniform(Rng& rng);

/// Uniform in [lo, hi).
double uniform(Rng& rng, double lo, double hi);

/// Uniform in {0, ..., n - 1}; n must be positive.
std::size_t uniform_index(Rng& rng, std::size_t n);

/// Standard complex Gaussian: independent N(0, 1) real and imaginary parts.
Complex complex_gaussian(Rng& rng);

/// Haar-random unit vector in C^dim.
ComplexVector haar_state(std::size_t dim, Rng& rng);

/// G G^dagger / tr for a dim x rank complex Ginibre matrix G (rank 0 means full).
ComplexMatrix density_matrix(std::size_t dim, Rng& rng, std::size_t rank = 0);

/// Uniform point on the probability simplex with `count` entries.
RealVector simplex_weights(std::size_t count, Rng& rng);

/// rows x cols matrix with orthonormal columns (rows >= cols), Haar distributed.
ComplexMatrix isometry(std::size_t rows, std::size_t cols, Rng& rng);

} // namespace random
} // namespace qorder
