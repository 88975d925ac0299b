#pragma once

// End-to-end automatic seeded region growing:
// median filter -> Otsu -> ROIs -> R x R candidate filter -> features ->
// K-means -> seed snapping -> region growing.

#include <cstdint>
#include <string>
#include <vector>

#include "image.hpp"
#include "kmeans.hpp"
#include "morphology.hpp"
#include "preprocess.hpp"
#include "region_growing.hpp"
#include "seed_selection.hpp"

namespace seedgrow {

/// The input cannot be segmented (no ROI, no candidate, too few candidates).
class PipelineError : public Error {
public:
    using Error::Error;
};

struct PipelineConfig {
    int k = 1;
    int r = 3;
    Connectivity connectivity = Connectivity::eight;
    int median_window = 3;
    Polarity polarity = Polarity::bright;
    std::size_t min_area = 5;
    std::uint64_t rng_seed = 0;
    FillMode fill_mode = FillMode::eroded_core_then_fill;
    int kmeans_max_iter = 300;
    double kmeans_tol = 1e-6;

    void validate() const {
        if (k < 1) throw ParameterError("k must be >= 1, got " + std::to_string(k));
        require_odd_window(r, "R");
        require_odd_window(median_window, "median window");
        if (min_area < 1) throw ParameterError("min_area must be >= 1");
    }
};

struct SeedStage {
    GrayImage filtered;
    OtsuResult otsu;
    BinaryMask mask;
    std::vector<Roi> rois;
    CandidateSet candidates;
    FeatureSet features;
    KmeansModel model;
    SeedSet seeds;
};

struct PipelineResult : SeedStage {
    LabelMap labels;
};

/// Everything up to and including seed selection.
inline SeedStage select_seeds_for(const GrayImage& img, const PipelineConfig& cfg) {
    cfg.validate();
    SeedStage s;
    s.filtered = median_filter(img, cfg.median_window);
    s.otsu = otsu(s.filtered);
    s.mask = binarize(s.filtered, s.otsu.threshold, cfg.polarity);
    s.rois = extract_rois(s.mask, cfg.min_area);
    if (s.rois.empty()) throw PipelineError("no regions of interest after thresholding");
    s.candidates = filter_candidates(s.filtered, s.mask, s.rois, cfg.r);
    if (s.candidates.empty()) throw PipelineError("no seed candidates survive the R x R filter");
    if (static_cast<std::size_t>(cfg.k) > s.candidates.size()) {
        throw PipelineError("k = " + std::to_string(cfg.k) + " exceeds the " + std::to_string(s.candidates.size()) +
                            " seed candidates");
    }
    s.features = extract_features(s.candidates);
    s.model = kmeans(s.features.features, {cfg.k, cfg.rng_seed, cfg.kmeans_max_iter, cfg.kmeans_tol});
    s.seeds = select_seeds(s.model, s.candidates, s.features.features, s.rois);
    return s;
}

inline PipelineResult segment(const GrayImage& img, const PipelineConfig& cfg) {
    PipelineResult res{select_seeds_for(img, cfg), {}};
    GrowConfig grow;
    grow.connectivity = cfg.connectivity;
    grow.window = cfg.r;
    grow.threshold = res.otsu.threshold;
    grow.polarity = cfg.polarity;
    grow.fill_mode = cfg.fill_mode;
    res.labels = grow_regions(res.filtered, res.seeds, grow);
    return res;
}

/// Checks the seed criteria on a finished seed stage and returns one message
/// per violation (empty when all hold):
///  - every seed's R x R window lies in the image and is foreground;
///  - every ROI owning at least one candidate owns at least one seed;
///  - every seed lies inside an ROI, with all 8 neighbors in that ROI;
///  - seeds occupy pairwise distinct pixels.
inline std::vector<std::string> seed_criteria_violations(const SeedStage& s, int r) {
    std::vector<std::string> out;
    const int h = r / 2;
    const LabelMap owner = roi_index(s.mask.width(), s.mask.height(), s.rois);
    for (const Seed& seed : s.seeds) {
        const std::string tag = "seed " + std::to_string(seed.id);
        bool window_ok = true;
        for (int dy = -h; dy <= h; ++dy) {
            for (int dx = -h; dx <= h; ++dx) {
                const int x = seed.x + dx;
                const int y = seed.y + dy;
                window_ok = window_ok && s.mask.contains(x, y) && s.mask(x, y);
            }
        }
        if (!window_ok) out.push_back(tag + ": R x R window touches background");
        if (!owner.contains(seed.x, seed.y) || owner(seed.x, seed.y) == 0) {
            out.push_back(tag + ": not inside any ROI");
            continue;
        }
        const std::uint32_t id = owner(seed.x, seed.y);
        for (const Point q : neighbors(seed.point(), Connectivity::eight, owner.width(), owner.height())) {
            if (owner[q] != id) {
                out.push_back(tag + ": lies on the boundary of its ROI");
                break;
            }
        }
        if (seed.x == 0 || seed.y == 0 || seed.x == owner.width() - 1 || seed.y == owner.height() - 1) {
            out.push_back(tag + ": lies on the image border");
        }
    }
    for (const Roi& roi : s.rois) {
        bool has_candidate = false;
        for (const Candidate& c : s.candidates) has_candidate = has_candidate || c.roi_id == roi.id;
        if (!has_candidate) continue;
        const auto roi_label = static_cast<std::uint32_t>(roi.id);
        bool has_seed = false;
        for (const Seed& seed : s.seeds) {
            has_seed = has_seed || (owner.contains(seed.x, seed.y) && owner(seed.x, seed.y) == roi_label);
        }
        if (!has_seed) out.push_back("roi " + std::to_string(roi.id) + ": has candidates but no seed");
    }
    for (std::size_t i = 0; i < s.seeds.size(); ++i) {
        for (std::size_t j = i + 1; j < s.seeds.size(); ++j) {
            if (s.seeds[i].point() == s.seeds[j].point()) {
                out.push_back("seeds " + std::to_string(s.seeds[i].id) + " and " + std::to_string(s.seeds[j].id) +
                              " share a pixel");
            }
        }
    }
    return out;
}

}  // namespace seedgrow
