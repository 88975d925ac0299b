#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "image.hpp"

namespace seedgrow {

/// Thrown by otsu() when every pixel falls into a single histogram bin.
class DegenerateHistogramError : public Error {
public:
    using Error::Error;
};

using Histogram = std::array<std::uint64_t, 256>;

struct OtsuResult {
    int threshold = 0;                    ///< classes are {v <= threshold} and {v > threshold}
    double between_class_variance = 0.0;  ///< w0 * w1 * (mu0 - mu1)^2 with normalized weights
    Histogram histogram{};
};

inline Histogram histogram(const GrayImage& img) {
    Histogram h{};
    for (auto v : img.pixels()) ++h[v];
    return h;
}

/// Median of the window x window neighborhood of every pixel, with
/// replicate-edge padding. Output values are always drawn from the input.
inline GrayImage median_filter(const GrayImage& img, int window) {
    if (window < 1 || window % 2 == 0) {
        throw ParameterError("median window must be odd and >= 1, got " + std::to_string(window));
    }
    if (window == 1) return img;
    const int r = window / 2;
    GrayImage out(img.width(), img.height());
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(window) * static_cast<std::size_t>(window));
    const auto mid = buf.begin() + static_cast<std::ptrdiff_t>(buf.size() / 2);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            std::size_t n = 0;
            for (int dy = -r; dy <= r; ++dy) {
                const int yy = std::clamp(y + dy, 0, img.height() - 1);
                for (int dx = -r; dx <= r; ++dx) {
                    buf[n++] = img(std::clamp(x + dx, 0, img.width() - 1), yy);
                }
            }
            std::nth_element(buf.begin(), mid, buf.end());
            out(x, y) = *mid;
        }
    }
    return out;
}

namespace detail {

// 192-bit unsigned value, (hi << 64) | lo.
struct U192 {
    unsigned __int128 hi = 0;
    std::uint64_t lo = 0;

    friend auto operator<=>(const U192& a, const U192& b) {
        if (a.hi != b.hi) return a.hi < b.hi ? std::strong_ordering::less : std::strong_ordering::greater;
        return a.lo <=> b.lo;
    }
    friend bool operator==(const U192&, const U192&) = default;
};

inline U192 mul(unsigned __int128 a, std::uint64_t b) {
    const auto a_lo = static_cast<std::uint64_t>(a);
    const auto a_hi = static_cast<std::uint64_t>(a >> 64);
    const unsigned __int128 p_lo = static_cast<unsigned __int128>(a_lo) * b;
    const unsigned __int128 p_hi = static_cast<unsigned __int128>(a_hi) * b;
    return {p_hi + (p_lo >> 64), static_cast<std::uint64_t>(p_lo)};
}

}  // namespace detail

/// Global Otsu threshold. Maximizes the between-class variance over
/// t in [0, 254]; ties resolve to the smallest t.
///
/// The criterion for a split with class sizes n0, n1 and intensity sums
/// S0, S1 is proportional to (n1*S0 - n0*S1)^2 / (n0*n1), which is compared
/// exactly by cross multiplication so that equal splits tie exactly.
inline OtsuResult otsu(const Histogram& hist) {
    int occupied = 0;
    std::uint64_t total = 0;
    std::uint64_t total_sum = 0;
    for (int v = 0; v < 256; ++v) {
        occupied += hist[v] != 0;
        total += hist[v];
        total_sum += hist[v] * static_cast<std::uint64_t>(v);
    }
    if (total == 0) throw ParameterError("otsu requires a non-empty image");
    if (occupied < 2) throw DegenerateHistogramError("degenerate histogram: image has a single intensity");

    // n*S is bounded by 255*N^2, so the squared difference fits in 128 bits
    // for N < 2^28. Larger inputs fall back to long double comparison.
    const bool exact = total < (std::uint64_t{1} << 28);

    OtsuResult res;
    res.histogram = hist;
    bool have_best = false;
    unsigned __int128 best_d2 = 0;
    std::uint64_t best_den = 1;
    long double best_ld = -1.0L;

    std::uint64_t n0 = 0;
    std::uint64_t s0 = 0;
    for (int t = 0; t <= 254; ++t) {
        n0 += hist[t];
        s0 += hist[t] * static_cast<std::uint64_t>(t);
        const std::uint64_t n1 = total - n0;
        const std::uint64_t s1 = total_sum - s0;
        if (n0 == 0 || n1 == 0) continue;  // one-sided split, zero variance
        const unsigned __int128 a = static_cast<unsigned __int128>(n1) * s0;
        const unsigned __int128 b = static_cast<unsigned __int128>(n0) * s1;
        const unsigned __int128 d = a > b ? a - b : b - a;
        const std::uint64_t den = n0 * n1;
        bool better = false;
        if (exact) {
            const unsigned __int128 d2 = d * d;
            // d2/den > best_d2/best_den  <=>  d2*best_den > best_d2*den
            better = detail::mul(d2, best_den) > detail::mul(best_d2, den);
            if (better) {
                best_d2 = d2;
                best_den = den;
            }
        } else {
            const long double ld = static_cast<long double>(d) * static_cast<long double>(d) / den;
            better = ld > best_ld;
            if (better) best_ld = ld;
        }
        if (better || !have_best) {
            have_best = true;
            res.threshold = t;
        }
    }

    // Report the normalized criterion for the winning threshold.
    std::uint64_t w = 0;
    std::uint64_t s = 0;
    for (int v = 0; v <= res.threshold; ++v) {
        w += hist[v];
        s += hist[v] * static_cast<std::uint64_t>(v);
    }
    const long double w0 = static_cast<long double>(w) / total;
    const long double w1 = 1.0L - w0;
    const long double mu0 = static_cast<long double>(s) / w;
    const long double mu1 = static_cast<long double>(total_sum - s) / (total - w);
    res.between_class_variance = static_cast<double>(w0 * w1 * (mu0 - mu1) * (mu0 - mu1));
    return res;
}

inline OtsuResult otsu(const GrayImage& img) { return otsu(histogram(img)); }

/// bright: foreground = {v > t}; dark: foreground = {v <= t}.
inline BinaryMask binarize(const GrayImage& img, int threshold, Polarity polarity) {
    if (threshold < 0 || threshold > 254) {
        throw ParameterError("threshold must be in [0, 254], got " + std::to_string(threshold));
    }
    BinaryMask mask(img.width(), img.height());
    auto& out = mask.pixels();
    const auto& in = img.pixels();
    for (std::size_t i = 0; i < in.size(); ++i) {
        const bool above = in[i] > threshold;
        out[i] = (polarity == Polarity::bright) == above ? 1 : 0;
    }
    return mask;
}

}  // namespace seedgrow
