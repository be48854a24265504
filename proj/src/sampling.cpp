#include "knng/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace knng {

std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(master_seed + 0x9e3779b97f4a7c15ULL * (trial_index + 1));
}

std::uint64_t sample_poisson_count(double mean, Xoshiro256pp& rng) {
    if (!(mean >= 0.0)) throw std::invalid_argument("Poisson mean must be nonnegative");
    if (mean == 0.0) return 0;
    if (mean < 30.0) {
        // inversion by products of uniforms
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double prod = rng.uniform();
        while (prod > limit) {
            ++k;
            prod *= rng.uniform();
        }
        return k;
    }
    // Hormann's PTRS transformed rejection sampler
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    const double log_mean = std::log(mean);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::abs(u);
        const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
            kf * log_mean - mean - std::lgamma(kf + 1.0)) {
            return static_cast<std::uint64_t>(kf);
        }
    }
}

PointSet sample_poisson_square(const SquareWorld& world, std::uint64_t seed) {
    if (!(world.area_n >= 0.0)) throw std::invalid_argument("world area must be nonnegative");
    PointSet ps;
    ps.world = world;
    ps.seed = seed;
    Xoshiro256pp rng(seed);
    const std::uint64_t m = sample_poisson_count(world.area_n, rng);
    const double side = world.side();
    ps.points.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        const double x = side * rng.uniform();
        const double y = side * rng.uniform();
        ps.points.push_back(Point{x, y});
    }
    return ps;
}

}  // namespace knng
