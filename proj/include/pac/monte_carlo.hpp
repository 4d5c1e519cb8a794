#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "pac/geometry.hpp"

namespace pac {

struct AreaEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    long samples = 0;
    long hits = 0;
};

/// Rejection sampling over the configuration's bounding box. Membership is
/// tested square by square in each square's own frame, independent of the
/// union kernel. Deterministic for a fixed seed.
inline AreaEstimate monte_carlo_area(const Configuration& c, long samples, std::uint64_t seed) {
    validate(c);
    if (samples < 1) throw std::invalid_argument("monte_carlo_area: samples must be >= 1");
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    for (const auto& s : c.squares) {
        for (Point p : square_polygon(s)) {
            min_x = std::min(min_x, p.x);
            min_y = std::min(min_y, p.y);
            max_x = std::max(max_x, p.x);
            max_y = std::max(max_y, p.y);
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(min_x, max_x);
    std::uniform_real_distribution<double> uy(min_y, max_y);
    AreaEstimate out;
    out.samples = samples;
    for (long i = 0; i < samples; ++i) {
        const Point p{ux(rng), uy(rng)};
        for (const auto& s : c.squares) {
            if (square_contains(s, p)) {
                ++out.hits;
                break;
            }
        }
    }
    const double box = (max_x - min_x) * (max_y - min_y);
    const double frac = static_cast<double>(out.hits) / static_cast<double>(samples);
    out.estimate = box * frac;
    out.std_error = box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
    return out;
}

}  // namespace pac
