#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "image.hpp"
#include "morphology.hpp"
#include "preprocess.hpp"

namespace seedgrow {

/// A seed that cannot start a region (outside the core domain, duplicated, ...).
class RejectedSeedError : public Error {
public:
    RejectedSeedError(int seed_id, const std::string& why)
        : Error("rejected seed " + std::to_string(seed_id) + ": " + why), seed_id_(seed_id) {}
    int seed_id() const { return seed_id_; }

private:
    int seed_id_;
};

enum class FillMode {
    eroded_core_then_fill,  ///< grow over the R x R core, then hand the rind to the nearest region
    otsu_only,              ///< grow over the whole thresholded foreground (leaks through thin bridges)
};

inline const char* to_string(FillMode m) {
    return m == FillMode::eroded_core_then_fill ? "eroded_core_then_fill" : "otsu_only";
}

struct GrowConfig {
    Connectivity connectivity = Connectivity::eight;
    int window = 3;  ///< R, odd side of the acceptance neighborhood
    int threshold = 0;
    Polarity polarity = Polarity::bright;
    FillMode fill_mode = FillMode::eroded_core_then_fill;
};

/// Multi-seed region growing with a neighborhood acceptance condition.
///
/// A pixel joins a region only if its whole R x R window is Otsu foreground
/// (the same rule that filtered the seed candidates), so growth cannot cross
/// bridges thinner than R. All seeds share one FIFO frontier, enqueued in
/// ascending id order, and the first region to reach a pixel keeps it. In
/// `eroded_core_then_fill` mode the remaining foreground reachable from a
/// region is then assigned by a second breadth-first pass from all labeled
/// pixels. Labels are 1..n following ascending seed id; background stays 0.
inline LabelMap grow_regions(const GrayImage& img, std::span<const Seed> seeds, const GrowConfig& cfg) {
    require_odd_window(cfg.window, "R");
    const BinaryMask mask = binarize(img, cfg.threshold, cfg.polarity);
    const BinaryMask core = erode_square(mask, cfg.window);
    const BinaryMask& domain = cfg.fill_mode == FillMode::eroded_core_then_fill ? core : mask;

    std::vector<Seed> ordered(seeds.begin(), seeds.end());
    std::sort(ordered.begin(), ordered.end(), [](const Seed& a, const Seed& b) { return a.id < b.id; });

    LabelMap labels(img.width(), img.height());
    std::queue<Point> frontier;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const Seed& s = ordered[i];
        if (s.id < 1) throw RejectedSeedError(s.id, "id must be positive");
        if (i > 0 && ordered[i - 1].id == s.id) throw RejectedSeedError(s.id, "duplicate id");
        if (!img.contains(s.x, s.y)) throw RejectedSeedError(s.id, "outside the image");
        if (!core(s.x, s.y)) {
            throw RejectedSeedError(s.id, "its R x R window is not entirely foreground");
        }
        if (labels(s.x, s.y)) throw RejectedSeedError(s.id, "shares its pixel with another seed");
        labels(s.x, s.y) = static_cast<std::uint32_t>(i + 1);
        frontier.push(s.point());
    }

    const auto offsets = neighbor_offsets(cfg.connectivity);
    auto flood = [&](const BinaryMask& allowed) {
        while (!frontier.empty()) {
            const Point p = frontier.front();
            frontier.pop();
            const std::uint32_t l = labels[p];
            for (const Point d : offsets) {
                const Point q{p.x + d.x, p.y + d.y};
                if (!labels.contains(q) || !allowed[q] || labels[q]) continue;
                labels[q] = l;
                frontier.push(q);
            }
        }
    };

    flood(domain);

    if (cfg.fill_mode == FillMode::eroded_core_then_fill) {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels.pixels()[i]) frontier.push(labels.point(i));
        }
        flood(mask);
    }
    return labels;
}

/// Plain Otsu segmentation: 8-connected components of the thresholded image.
inline LabelMap baseline_otsu_labels(const GrayImage& img, int threshold, Polarity polarity) {
    return label_components(binarize(img, threshold, polarity), Connectivity::eight);
}

}  // namespace seedgrow
