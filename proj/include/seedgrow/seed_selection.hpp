#pragma once

// Seed selection: ROI extraction from the Otsu mask, the R x R boundary /
// outlier filter, feature normalization, and snapping K-means centroids
// back onto real candidate pixels.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "image.hpp"
#include "kmeans.hpp"
#include "morphology.hpp"

namespace seedgrow {

/// No seed can be derived (no candidates survived filtering).
class EmptyCandidatesError : public Error {
public:
    using Error::Error;
};

struct BoundingBox {
    int min_x = 0;
    int min_y = 0;
    int max_x = 0;
    int max_y = 0;

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// 8-connected foreground component of the binarized image.
struct Roi {
    int id = 0;
    std::vector<Point> pixels;  // raster order
    BoundingBox bbox;

    std::size_t area() const { return pixels.size(); }
};

struct Candidate {
    int x = 0;
    int y = 0;
    std::uint8_t intensity = 0;
    int roi_id = 0;

    Point point() const { return {x, y}; }
    friend bool operator==(const Candidate&, const Candidate&) = default;
};

using CandidateSet = std::vector<Candidate>;

/// Per-dimension min/max used for the [0, 1] feature scaling.
struct FeatureScaling {
    double min_x = 0, max_x = 0;
    double min_y = 0, max_y = 0;
    double min_i = 0, max_i = 0;
};

struct FeatureSet {
    std::vector<FeatureVector> features;  // parallel to the candidate set
    FeatureScaling scaling;
};

/// Connected foreground components (always 8-connected) with at least
/// `min_area` pixels. Ids are 1..n in raster order of each component's first
/// pixel; components below `min_area` are dropped before numbering.
inline std::vector<Roi> extract_rois(const BinaryMask& mask, std::size_t min_area = 1) {
    std::uint32_t n = 0;
    const LabelMap comp = label_components(mask, Connectivity::eight, &n);
    std::vector<Roi> all(n);
    for (int y = 0; y < comp.height(); ++y) {
        for (int x = 0; x < comp.width(); ++x) {
            const std::uint32_t l = comp(x, y);
            if (l == 0) continue;
            Roi& r = all[l - 1];
            if (r.pixels.empty()) {
                r.bbox = {x, y, x, y};
            } else {
                r.bbox.min_x = std::min(r.bbox.min_x, x);
                r.bbox.max_x = std::max(r.bbox.max_x, x);
                r.bbox.max_y = y;
            }
            r.pixels.push_back({x, y});
        }
    }
    std::vector<Roi> kept;
    for (auto& r : all) {
        if (r.area() < min_area) continue;
        r.id = static_cast<int>(kept.size()) + 1;
        kept.push_back(std::move(r));
    }
    return kept;
}

/// Map from pixel to the id of the ROI containing it (0 outside every ROI).
inline LabelMap roi_index(int width, int height, std::span<const Roi> rois) {
    LabelMap idx(width, height);
    for (const Roi& r : rois) {
        for (const Point p : r.pixels) idx[p] = static_cast<std::uint32_t>(r.id);
    }
    return idx;
}

/// Keeps the ROI pixels whose whole centered R x R window lies inside the
/// image and is foreground. Candidates come out in raster order.
inline CandidateSet filter_candidates(const GrayImage& img, const BinaryMask& mask, std::span<const Roi> rois,
                                      int window) {
    require_odd_window(window, "R");
    if (!img.same_shape(mask)) throw ParameterError("image and mask dimensions differ");
    const BinaryMask core = erode_square(mask, window);
    const LabelMap owner = roi_index(mask.width(), mask.height(), rois);
    CandidateSet out;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!core(x, y) || owner(x, y) == 0) continue;
            out.push_back({x, y, img(x, y), static_cast<int>(owner(x, y))});
        }
    }
    return out;
}

/// Min-max scales (x, y, intensity) of each candidate to [0, 1]; a dimension
/// with zero range maps to 0.5.
inline FeatureSet extract_features(std::span<const Candidate> candidates) {
    if (candidates.empty()) throw EmptyCandidatesError("no seed candidates: cannot build features");
    FeatureScaling s;
    s.min_x = s.max_x = candidates[0].x;
    s.min_y = s.max_y = candidates[0].y;
    s.min_i = s.max_i = candidates[0].intensity;
    for (const Candidate& c : candidates) {
        s.min_x = std::min<double>(s.min_x, c.x);
        s.max_x = std::max<double>(s.max_x, c.x);
        s.min_y = std::min<double>(s.min_y, c.y);
        s.max_y = std::max<double>(s.max_y, c.y);
        s.min_i = std::min<double>(s.min_i, c.intensity);
        s.max_i = std::max<double>(s.max_i, c.intensity);
    }
    auto scale = [](double v, double lo, double hi) { return hi == lo ? 0.5 : (v - lo) / (hi - lo); };
    FeatureSet fs;
    fs.scaling = s;
    fs.features.reserve(candidates.size());
    for (const Candidate& c : candidates) {
        fs.features.push_back(
            {scale(c.x, s.min_x, s.max_x), scale(c.y, s.min_y, s.max_y), scale(c.intensity, s.min_i, s.max_i)});
    }
    return fs;
}

namespace detail {

inline std::size_t nearest_candidate(const FeatureVector& target, std::span<const FeatureVector> features,
                                     std::span<const std::size_t> among) {
    std::size_t best = among.front();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i : among) {
        const double d = squared_distance(target, features[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

}  // namespace detail

/// Turns K-means centroids into seed pixels.
///
/// Each centroid snaps to its nearest candidate in feature space (ties to the
/// lowest candidate index) and duplicate snaps collapse. Any ROI that owns
/// candidates but received no seed then gets the candidate closest to the
/// mean feature of its own candidates. Seeds are numbered 1..n in raster order.
inline SeedSet select_seeds(const KmeansModel& model, std::span<const Candidate> candidates,
                            std::span<const FeatureVector> features, std::span<const Roi> rois) {
    if (candidates.empty()) throw EmptyCandidatesError("no seed candidates");
    if (candidates.size() != features.size()) throw ParameterError("candidates and features differ in length");

    std::vector<std::size_t> all(candidates.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;

    std::vector<std::uint8_t> picked(candidates.size(), 0);
    for (const FeatureVector& c : model.centroids) picked[detail::nearest_candidate(c, features, all)] = 1;

    for (const Roi& roi : rois) {
        std::vector<std::size_t> owned;
        bool seeded = false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (candidates[i].roi_id != roi.id) continue;
            owned.push_back(i);
            seeded = seeded || picked[i];
        }
        if (owned.empty() || seeded) continue;
        FeatureVector mean{};
        for (std::size_t i : owned) {
            mean.fx += features[i].fx;
            mean.fy += features[i].fy;
            mean.fi += features[i].fi;
        }
        const auto n = static_cast<double>(owned.size());
        mean = {mean.fx / n, mean.fy / n, mean.fi / n};
        picked[detail::nearest_candidate(mean, features, owned)] = 1;
    }

    SeedSet seeds;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (picked[i]) seeds.push_back({0, candidates[i].x, candidates[i].y, candidates[i].intensity});
    }
    std::sort(seeds.begin(), seeds.end(),
              [](const Seed& a, const Seed& b) { return raster_less(a.point(), b.point()); });
    for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i].id = static_cast<int>(i) + 1;
    return seeds;
}

/// Seed CSV: header `id,x,y,intensity`, LF line endings.
inline std::string seeds_to_csv(std::span<const Seed> seeds) {
    std::ostringstream out;
    out << "id,x,y,intensity\n";
    for (const Seed& s : seeds) out << s.id << ',' << s.x << ',' << s.y << ',' << int{s.intensity} << '\n';
    return out.str();
}

}  // namespace seedgrow
