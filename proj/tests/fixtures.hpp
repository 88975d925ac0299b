#pragma once

#include <cstdint>
#include <vector>

#include <seedgrow/image.hpp>

namespace fixtures {

using seedgrow::GrayImage;

/// Half the pixels 10, half 200, interleaved.
inline GrayImage bimodal_10_200(int w = 8, int h = 8) {
    GrayImage img(w, h);
    for (std::size_t i = 0; i < img.size(); ++i) img.pixels()[i] = i % 2 ? 200 : 10;
    return img;
}

/// 15x7: two 5x5 bright blocks (columns 1-5 and 9-13, rows 1-5) joined by
/// a one-pixel bridge along row 3.
inline GrayImage small_bridge() {
    GrayImage img(15, 7, std::uint8_t{0});
    for (int y = 1; y <= 5; ++y) {
        for (int x = 1; x <= 5; ++x) img(x, y) = 200;
        for (int x = 9; x <= 13; ++x) img(x, y) = 200;
    }
    for (int x = 6; x <= 8; ++x) img(x, 3) = 200;
    return img;
}

struct DumbbellLayout {
    int width = 64;
    int height = 32;
    int radius = 9;
    int left_cx = 14;
    int right_cx = 49;
    int cy = 16;
};

/// Two radius-9 discs on one row joined by a one-pixel-wide bright bridge.
/// `gt` receives 1 for the left disc, 2 for the right disc, 0 elsewhere
/// (bridge pixels outside the discs included).
inline GrayImage dumbbell(seedgrow::LabelMap* gt = nullptr, DumbbellLayout l = {}) {
    GrayImage img(l.width, l.height, std::uint8_t{50});
    if (gt) *gt = seedgrow::LabelMap(l.width, l.height);
    for (int y = 0; y < l.height; ++y) {
        for (int x = 0; x < l.width; ++x) {
            const int dl = (x - l.left_cx) * (x - l.left_cx) + (y - l.cy) * (y - l.cy);
            const int dr = (x - l.right_cx) * (x - l.right_cx) + (y - l.cy) * (y - l.cy);
            const int r2 = l.radius * l.radius;
            if (dl <= r2 || dr <= r2) img(x, y) = 200;
            if (gt && dl <= r2) (*gt)(x, y) = 1;
            if (gt && dr <= r2) (*gt)(x, y) = 2;
        }
    }
    for (int x = l.left_cx; x <= l.right_cx; ++x) img(x, l.cy) = 200;
    return img;
}

}  // namespace fixtures
