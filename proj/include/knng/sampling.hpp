#pragma once

#include <cstdint>
#include <vector>

#include "knng/geometry.hpp"
#include "knng/rng.hpp"

namespace knng {

// A realisation of the point process in a square window, fully determined by
// (world, seed).
struct PointSet {
    SquareWorld world;
    std::uint64_t seed = 0;
    std::vector<Point> points;
};

// Per-trial stream derivation: a stateless 64-bit mix, injective in
// trial_index for a fixed master seed.
std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

// Poisson(mean) variate: product inversion below mean 30, transformed
// rejection (PTRS) above. Consumes a deterministic number of stream values
// for a given outcome, so realisations are byte-identical across platforms.
std::uint64_t sample_poisson_count(double mean, Xoshiro256pp& rng);

// Poisson point process of intensity 1 on [0, side]^2: point count is
// Poisson(area_n), locations i.i.d. uniform.
PointSet sample_poisson_square(const SquareWorld& world, std::uint64_t seed);

}  // namespace knng
