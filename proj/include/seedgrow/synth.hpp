#pragma once

// Synthetic "cell" images: bright discs on a dark background with additive
// Gaussian noise, plus the matching ground-truth label map.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "image.hpp"
#include "kmeans.hpp"

namespace seedgrow {

class PlacementError : public Error {
public:
    using Error::Error;
};

struct SynthSpec {
    int width = 256;
    int height = 256;
    int n_cells = 4;
    int radius_min = 15;
    int radius_max = 25;
    int fg_mean = 200;
    int bg_mean = 50;
    double noise_sigma = 0.0;
    std::uint64_t rng_seed = 0;
};

struct SynthResult {
    GrayImage image;
    LabelMap ground_truth;
};

struct Disc {
    int cx = 0;
    int cy = 0;
    int r = 0;
};

inline constexpr int kMaxPlacementAttempts = 10'000;

namespace detail {

inline double standard_normal(std::mt19937_64& rng) {
    // Box-Muller on the portable uniform generator.
    double u1 = unit_uniform(rng);
    while (u1 <= 0.0) u1 = unit_uniform(rng);
    const double u2 = unit_uniform(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

}  // namespace detail

/// Draws `n_cells` filled discs at rejection-sampled centers. Any two discs
/// keep at least two background pixels between them.
inline SynthResult synth_cells(const SynthSpec& spec) {
    if (spec.width < 1 || spec.height < 1) throw ParameterError("synth dimensions must be positive");
    if (spec.n_cells < 0) throw ParameterError("n_cells must be non-negative");
    if (spec.radius_min < 1 || spec.radius_max < spec.radius_min) {
        throw ParameterError("radius range must satisfy 1 <= min <= max");
    }
    if (spec.fg_mean == spec.bg_mean) throw ParameterError("fg_mean must differ from bg_mean");
    if (spec.fg_mean < 0 || spec.fg_mean > 255 || spec.bg_mean < 0 || spec.bg_mean > 255) {
        throw ParameterError("intensities must be in [0, 255]");
    }
    if (!(spec.noise_sigma >= 0.0)) throw ParameterError("noise_sigma must be >= 0");

    std::mt19937_64 rng(spec.rng_seed);
    std::vector<Disc> discs;
    int attempts = 0;
    while (static_cast<int>(discs.size()) < spec.n_cells) {
        if (++attempts > kMaxPlacementAttempts) {
            throw PlacementError("could not place " + std::to_string(spec.n_cells) + " cells in " +
                                 std::to_string(kMaxPlacementAttempts) +
                                 " attempts; use a smaller radius or fewer cells");
        }
        const int r = detail::uniform_int(rng, spec.radius_min, spec.radius_max);
        if (2 * r + 1 > spec.width || 2 * r + 1 > spec.height) continue;
        const Disc d{detail::uniform_int(rng, r, spec.width - 1 - r), detail::uniform_int(rng, r, spec.height - 1 - r),
                     r};
        const bool clear = std::all_of(discs.begin(), discs.end(), [&](const Disc& o) {
            const long dx = d.cx - o.cx;
            const long dy = d.cy - o.cy;
            const long gap = d.r + o.r + 3;
            return dx * dx + dy * dy >= gap * gap;
        });
        if (clear) discs.push_back(d);
    }

    SynthResult out{GrayImage(spec.width, spec.height, static_cast<std::uint8_t>(spec.bg_mean)),
                    LabelMap(spec.width, spec.height)};
    for (std::size_t i = 0; i < discs.size(); ++i) {
        const Disc& d = discs[i];
        for (int y = d.cy - d.r; y <= d.cy + d.r; ++y) {
            for (int x = d.cx - d.r; x <= d.cx + d.r; ++x) {
                if ((x - d.cx) * (x - d.cx) + (y - d.cy) * (y - d.cy) > d.r * d.r) continue;
                out.ground_truth(x, y) = static_cast<std::uint32_t>(i + 1);
                out.image(x, y) = static_cast<std::uint8_t>(spec.fg_mean);
            }
        }
    }
    if (spec.noise_sigma > 0.0) {
        for (auto& v : out.image.pixels()) {
            const double noisy = v + spec.noise_sigma * detail::standard_normal(rng);
            v = static_cast<std::uint8_t>(std::clamp<long>(std::lround(noisy), 0, 255));
        }
    }
    return out;
}

}  // namespace seedgrow
