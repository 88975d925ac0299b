#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace seedgrow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument (even window, k out of range, size mismatch, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Pixel coordinate: x is the column, y the row, origin at the top-left.
struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Raster order comparison (row first, then column).
inline bool raster_less(const Point& a, const Point& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

/// Row-major single-channel raster. `Image<std::uint8_t>` is the grayscale
/// input, `Image<bool>`-like masks use std::uint8_t as well to keep the
/// storage contiguous.
template <typename T>
class Image {
public:
    using value_type = T;

    Image() = default;

    Image(int width, int height, T fill = T{}) : width_(width), height_(height) {
        if (width < 1 || height < 1) {
            throw ParameterError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                                 std::to_string(height));
        }
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    Image(int width, int height, std::vector<T> data) : width_(width), height_(height), data_(std::move(data)) {
        if (width < 1 || height < 1) {
            throw ParameterError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                                 std::to_string(height));
        }
        if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw ParameterError("pixel buffer length " + std::to_string(data_.size()) + " does not match " +
                                 std::to_string(width) + "x" + std::to_string(height));
        }
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    bool contains(Point p) const { return contains(p.x, p.y); }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }
    Point point(std::size_t idx) const {
        return {static_cast<int>(idx % static_cast<std::size_t>(width_)),
                static_cast<int>(idx / static_cast<std::size_t>(width_))};
    }

    T& operator()(int x, int y) { return data_[index(x, y)]; }
    const T& operator()(int x, int y) const { return data_[index(x, y)]; }
    T& operator[](Point p) { return data_[index(p.x, p.y)]; }
    const T& operator[](Point p) const { return data_[index(p.x, p.y)]; }

    const std::vector<T>& pixels() const { return data_; }
    std::vector<T>& pixels() { return data_; }

    bool same_shape(const auto& other) const { return width_ == other.width() && height_ == other.height(); }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using GrayImage = Image<std::uint8_t>;
/// Foreground flags: nonzero = foreground.
using BinaryMask = Image<std::uint8_t>;
/// 0 = background, k > 0 = region k.
using LabelMap = Image<std::uint32_t>;

struct Seed {
    int id = 0;
    int x = 0;
    int y = 0;
    std::uint8_t intensity = 0;

    Point point() const { return {x, y}; }
    friend bool operator==(const Seed&, const Seed&) = default;
};

using SeedSet = std::vector<Seed>;

enum class Polarity { bright, dark };
enum class Connectivity { four = 4, eight = 8 };

inline const char* to_string(Polarity p) { return p == Polarity::bright ? "bright" : "dark"; }

/// Largest label present in a map.
inline std::uint32_t max_label(const LabelMap& lm) {
    std::uint32_t best = 0;
    for (auto v : lm.pixels()) best = v > best ? v : best;
    return best;
}

}  // namespace seedgrow
