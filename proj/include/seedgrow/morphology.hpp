#pragma once

// Neighborhoods, square erosion and connected-component labeling on binary
// masks. Shared by seed selection, region growing and the Otsu baseline.

#include <array>
#include <cstdint>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "image.hpp"

namespace seedgrow {

namespace detail {
// N, S, W, E, then NW, NE, SW, SE.
inline constexpr std::array<Point, 8> kNeighborOffsets{{
    {0, -1}, {0, 1}, {-1, 0}, {1, 0}, {-1, -1}, {1, -1}, {-1, 1}, {1, 1},
}};
}  // namespace detail

/// Offsets for a connectivity, in the fixed order N, S, W, E, NW, NE, SW, SE.
inline std::span<const Point> neighbor_offsets(Connectivity c) {
    return {detail::kNeighborOffsets.data(), c == Connectivity::four ? std::size_t{4} : std::size_t{8}};
}

/// In-bounds neighbors of `p`.
inline std::vector<Point> neighbors(Point p, Connectivity c, int width, int height) {
    std::vector<Point> out;
    out.reserve(8);
    for (const Point d : neighbor_offsets(c)) {
        const Point q{p.x + d.x, p.y + d.y};
        if (q.x >= 0 && q.y >= 0 && q.x < width && q.y < height) out.push_back(q);
    }
    return out;
}

inline Connectivity connectivity_from_int(int n) {
    if (n == 4) return Connectivity::four;
    if (n == 8) return Connectivity::eight;
    throw ParameterError("connectivity must be 4 or 8, got " + std::to_string(n));
}

inline void require_odd_window(int side, const char* what) {
    if (side < 1 || side % 2 == 0) {
        throw ParameterError(std::string(what) + " must be odd and >= 1, got " + std::to_string(side));
    }
}

/// Erosion by a side x side square; pixels outside the image count as
/// background, so a pixel survives only if its whole window is inside the
/// image and foreground.
inline BinaryMask erode_square(const BinaryMask& mask, int side) {
    require_odd_window(side, "window side");
    const int w = mask.width();
    const int h = mask.height();
    const int r = side / 2;
    // Summed-area table of foreground counts, (w+1) x (h+1).
    std::vector<std::uint32_t> sat(static_cast<std::size_t>(w + 1) * static_cast<std::size_t>(h + 1), 0);
    auto at = [&](int x, int y) -> std::uint32_t& {
        return sat[static_cast<std::size_t>(y) * static_cast<std::size_t>(w + 1) + static_cast<std::size_t>(x)];
    };
    for (int y = 0; y < h; ++y) {
        std::uint32_t row = 0;
        for (int x = 0; x < w; ++x) {
            row += mask(x, y) != 0;
            at(x + 1, y + 1) = at(x + 1, y) + row;
        }
    }
    const auto full = static_cast<std::uint32_t>(side) * static_cast<std::uint32_t>(side);
    BinaryMask out(w, h);
    for (int y = r; y < h - r; ++y) {
        for (int x = r; x < w - r; ++x) {
            if (!mask(x, y)) continue;
            const std::uint32_t count =
                at(x + r + 1, y + r + 1) - at(x - r, y + r + 1) - at(x + r + 1, y - r) + at(x - r, y - r);
            out(x, y) = count == full ? 1 : 0;
        }
    }
    return out;
}

/// Labels connected foreground components. Labels are 1..n in raster order
/// of each component's first pixel.
inline LabelMap label_components(const BinaryMask& mask, Connectivity c, std::uint32_t* count = nullptr) {
    LabelMap labels(mask.width(), mask.height());
    std::uint32_t next = 0;
    std::queue<Point> frontier;
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            if (!mask(x, y) || labels(x, y)) continue;
            ++next;
            labels(x, y) = next;
            frontier.push({x, y});
            while (!frontier.empty()) {
                const Point p = frontier.front();
                frontier.pop();
                for (const Point d : neighbor_offsets(c)) {
                    const Point q{p.x + d.x, p.y + d.y};
                    if (!mask.contains(q) || !mask[q] || labels[q]) continue;
                    labels[q] = next;
                    frontier.push(q);
                }
            }
        }
    }
    if (count) *count = next;
    return labels;
}

/// True when every nonzero label's pixel set is connected under `c`.
inline bool labels_connected(const LabelMap& labels, Connectivity c) {
    const std::uint32_t n = max_label(labels);
    std::vector<std::uint8_t> seen_label(n + 1, 0);
    BinaryMask visited(labels.width(), labels.height());
    std::queue<Point> frontier;
    for (int y = 0; y < labels.height(); ++y) {
        for (int x = 0; x < labels.width(); ++x) {
            const std::uint32_t l = labels(x, y);
            if (l == 0 || visited(x, y)) continue;
            if (seen_label[l]) return false;  // second component with the same label
            seen_label[l] = 1;
            visited(x, y) = 1;
            frontier.push({x, y});
            while (!frontier.empty()) {
                const Point p = frontier.front();
                frontier.pop();
                for (const Point d : neighbor_offsets(c)) {
                    const Point q{p.x + d.x, p.y + d.y};
                    if (!labels.contains(q) || visited[q] || labels[q] != l) continue;
                    visited[q] = 1;
                    frontier.push(q);
                }
            }
        }
    }
    return true;
}

}  // namespace seedgrow
