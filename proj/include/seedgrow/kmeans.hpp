#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "image.hpp"

namespace seedgrow {

/// Normalized (column, row, intensity) feature of a seed candidate.
struct FeatureVector {
    double fx = 0.0;
    double fy = 0.0;
    double fi = 0.0;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

inline double squared_distance(const FeatureVector& a, const FeatureVector& b) {
    const double dx = a.fx - b.fx;
    const double dy = a.fy - b.fy;
    const double di = a.fi - b.fi;
    return dx * dx + dy * dy + di * di;
}

struct KmeansOptions {
    int k = 1;
    std::uint64_t rng_seed = 0;
    int max_iter = 300;
    double tol = 1e-6;  ///< stop once no centroid moves this far in one iteration
};

struct KmeansModel {
    int k = 0;
    std::vector<FeatureVector> centroids;
    std::vector<int> assignments;        ///< point index -> cluster index
    double inertia = 0.0;                ///< sum of squared distances to assigned centroids
    int iterations = 0;                  ///< Lloyd update steps performed
    std::uint64_t rng_seed = 0;
    std::vector<double> inertia_history; ///< first entry is after seeding, last equals `inertia`
};

namespace detail {

// Uniform double in [0, 1) from the raw engine output. std::uniform_real_distribution
// is implementation-defined, this is not.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline std::vector<FeatureVector> kmeanspp_init(std::span<const FeatureVector> pts, int k, std::mt19937_64& rng) {
    const std::size_t n = pts.size();
    std::vector<FeatureVector> centers;
    std::vector<std::uint8_t> chosen(n, 0);
    centers.reserve(static_cast<std::size_t>(k));

    std::size_t first = static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(n));
    if (first >= n) first = n - 1;
    centers.push_back(pts[first]);
    chosen[first] = 1;

    std::vector<double> d2(n);
    for (std::size_t i = 0; i < n; ++i) d2[i] = squared_distance(pts[i], pts[first]);

    while (centers.size() < static_cast<std::size_t>(k)) {
        double total = 0.0;
        for (double v : d2) total += v;
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = unit_uniform(rng) * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (d2[i] <= 0.0) continue;
                acc += d2[i];
                pick = i;
                if (acc > target) break;
            }
        } else {
            // Every remaining point coincides with a center: take the first unused one.
            for (std::size_t i = 0; i < n && pick == n; ++i) {
                if (!chosen[i]) pick = i;
            }
        }
        chosen[pick] = 1;
        centers.push_back(pts[pick]);
        for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(pts[i], pts[pick]));
    }
    return centers;
}

inline int nearest(const FeatureVector& p, std::span<const FeatureVector> centers) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.size(); ++c) {
        const double d = squared_distance(p, centers[c]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

inline void assign(std::span<const FeatureVector> pts, std::span<const FeatureVector> centers,
                   std::vector<int>& assignments) {
    for (std::size_t i = 0; i < pts.size(); ++i) assignments[i] = nearest(pts[i], centers);
}

// Fills empty clusters by moving in the point farthest from its own centroid
// (taken only from clusters that keep at least one member).
inline void repair_empty(std::span<const FeatureVector> pts, std::vector<FeatureVector>& centers,
                         std::vector<int>& assignments) {
    std::vector<std::size_t> sizes(centers.size(), 0);
    for (int a : assignments) ++sizes[static_cast<std::size_t>(a)];
    for (std::size_t c = 0; c < centers.size(); ++c) {
        if (sizes[c] != 0) continue;
        std::size_t far = pts.size();
        double far_d = -1.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto owner = static_cast<std::size_t>(assignments[i]);
            if (sizes[owner] < 2) continue;
            const double d = squared_distance(pts[i], centers[owner]);
            if (d > far_d) {
                far_d = d;
                far = i;
            }
        }
        --sizes[static_cast<std::size_t>(assignments[far])];
        assignments[far] = static_cast<int>(c);
        sizes[c] = 1;
        centers[c] = pts[far];
    }
}

inline double inertia(std::span<const FeatureVector> pts, std::span<const FeatureVector> centers,
                      const std::vector<int>& assignments) {
    double sum = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sum += squared_distance(pts[i], centers[static_cast<std::size_t>(assignments[i])]);
    }
    return sum;
}

}  // namespace detail

/// Lloyd's algorithm from a k-means++ seeding. Deterministic for a given
/// rng_seed. Nearest-centroid ties go to the lowest cluster index.
inline KmeansModel kmeans(std::span<const FeatureVector> points, const KmeansOptions& opt) {
    if (opt.k < 1) throw ParameterError("k must be >= 1, got " + std::to_string(opt.k));
    if (static_cast<std::size_t>(opt.k) > points.size()) {
        throw ParameterError("k = " + std::to_string(opt.k) + " exceeds the number of points (" +
                             std::to_string(points.size()) + ")");
    }
    if (opt.max_iter < 0) throw ParameterError("max_iter must be non-negative");

    std::mt19937_64 rng(opt.rng_seed);
    KmeansModel m;
    m.k = opt.k;
    m.rng_seed = opt.rng_seed;
    m.centroids = detail::kmeanspp_init(points, opt.k, rng);
    m.assignments.assign(points.size(), 0);

    detail::assign(points, m.centroids, m.assignments);
    detail::repair_empty(points, m.centroids, m.assignments);
    m.inertia_history.push_back(detail::inertia(points, m.centroids, m.assignments));

    const auto k = static_cast<std::size_t>(opt.k);
    std::vector<FeatureVector> sums(k);
    std::vector<std::size_t> counts(k);
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        if (iter > 0) {
            detail::assign(points, m.centroids, m.assignments);
            detail::repair_empty(points, m.centroids, m.assignments);
        }
        std::fill(sums.begin(), sums.end(), FeatureVector{});
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const auto c = static_cast<std::size_t>(m.assignments[i]);
            sums[c].fx += points[i].fx;
            sums[c].fy += points[i].fy;
            sums[c].fi += points[i].fi;
            ++counts[c];
        }
        double max_shift2 = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            const auto n = static_cast<double>(counts[c]);
            const FeatureVector next{sums[c].fx / n, sums[c].fy / n, sums[c].fi / n};
            max_shift2 = std::max(max_shift2, squared_distance(next, m.centroids[c]));
            m.centroids[c] = next;
        }
        ++m.iterations;
        m.inertia_history.push_back(detail::inertia(points, m.centroids, m.assignments));
        if (max_shift2 < opt.tol * opt.tol) break;
    }

    // Final assignment against the converged centroids.
    detail::assign(points, m.centroids, m.assignments);
    detail::repair_empty(points, m.centroids, m.assignments);
    m.inertia = detail::inertia(points, m.centroids, m.assignments);
    m.inertia_history.push_back(m.inertia);
    return m;
}

}  // namespace seedgrow
