#pragma once

// Binary Netpbm I/O: 8-bit P5 for grayscale rasters, 16-bit big-endian P5
// for label maps, and P6 for false-color label previews.

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "image.hpp"

namespace seedgrow {

/// Malformed Netpbm input. `offset()` is the byte position where decoding failed.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at byte offset " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class TruncatedDataError : public ParseError {
public:
    using ParseError::ParseError;
};

class MaxvalError : public ParseError {
public:
    using ParseError::ParseError;
};

class LabelOverflowError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

using Bytes = std::vector<std::uint8_t>;

namespace detail {

struct PnmHeader {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::size_t payload_offset = 0;
};

class HeaderScanner {
public:
    explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void expect_magic(char kind) {
        if (bytes_.size() < 2 || bytes_[0] != 'P' || bytes_[1] != static_cast<std::uint8_t>(kind)) {
            throw ParseError(std::string("expected magic \"P") + kind + "\"", 0);
        }
        pos_ = 2;
    }

    // Reads one unsigned decimal token, skipping whitespace and '#' comments.
    long read_uint(const char* name) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) throw TruncatedDataError(std::string("header ended before ") + name, pos_);
        if (!std::isdigit(bytes_[pos_])) throw ParseError(std::string("expected digits for ") + name, pos_);
        const std::size_t start = pos_;
        token_start_ = start;
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) throw ParseError(std::string(name) + " is too large", start);
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates maxval from the payload.
    std::size_t consume_payload_separator() {
        if (pos_ >= bytes_.size()) throw TruncatedDataError("missing whitespace before pixel data", pos_);
        if (!std::isspace(bytes_[pos_])) throw ParseError("expected whitespace before pixel data", pos_);
        return ++pos_;
    }

    std::size_t position() const { return pos_; }
    std::size_t token_start() const { return token_start_; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
    std::size_t token_start_ = 0;
};

inline PnmHeader read_header(std::span<const std::uint8_t> bytes, char kind, int max_maxval) {
    HeaderScanner scan(bytes);
    scan.expect_magic(kind);
    PnmHeader h;
    const long w = scan.read_uint("width");
    if (w < 1) throw ParseError("width must be positive", scan.token_start());
    const long ht = scan.read_uint("height");
    if (ht < 1) throw ParseError("height must be positive", scan.token_start());
    const long maxval = scan.read_uint("maxval");
    const std::size_t at = scan.token_start();
    if (maxval < 1) throw ParseError("maxval must be positive", at);
    if (maxval > max_maxval) {
        throw MaxvalError("maxval " + std::to_string(maxval) + " exceeds " + std::to_string(max_maxval), at);
    }
    if (w * ht > (1L << 31)) throw ParseError("image dimensions too large", at);
    h.width = static_cast<int>(w);
    h.height = static_cast<int>(ht);
    h.maxval = static_cast<int>(maxval);
    h.payload_offset = scan.consume_payload_separator();
    return h;
}

inline void append_header(Bytes& out, char kind, int width, int height, int maxval) {
    const std::string header =
        std::string("P") + kind + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n" +
        std::to_string(maxval) + "\n";
    out.insert(out.end(), header.begin(), header.end());
}

}  // namespace detail

/// Decodes a binary 8-bit PGM. Trailing bytes after the payload are ignored.
inline GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    const auto h = detail::read_header(bytes, '5', 255);
    const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
    if (bytes.size() - h.payload_offset < n) {
        throw TruncatedDataError("pixel data truncated: expected " + std::to_string(n) + " bytes, found " +
                                     std::to_string(bytes.size() - h.payload_offset),
                                 bytes.size());
    }
    const auto first = bytes.begin() + static_cast<std::ptrdiff_t>(h.payload_offset);
    return GrayImage(h.width, h.height, std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(n)));
}

inline Bytes write_pgm(const GrayImage& img) {
    Bytes out;
    detail::append_header(out, '5', img.width(), img.height(), 255);
    out.insert(out.end(), img.pixels().begin(), img.pixels().end());
    return out;
}

/// Emits a 16-bit big-endian P5 (maxval 65535) so labels above 255 survive.
inline Bytes write_label_map(const LabelMap& lm) {
    Bytes out;
    detail::append_header(out, '5', lm.width(), lm.height(), 65535);
    out.reserve(out.size() + 2 * lm.size());
    for (std::uint32_t v : lm.pixels()) {
        if (v > 65535) throw LabelOverflowError("label " + std::to_string(v) + " does not fit in 16 bits");
        out.push_back(static_cast<std::uint8_t>(v >> 8));
        out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }
    return out;
}

/// Reads a P5 label map: two big-endian bytes per sample when maxval > 255,
/// otherwise one byte per sample (plain 8-bit masks are accepted too).
inline LabelMap read_label_map(std::span<const std::uint8_t> bytes) {
    const auto h = detail::read_header(bytes, '5', 65535);
    const std::size_t n = static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height);
    const std::size_t sample = h.maxval > 255 ? 2 : 1;
    if ((bytes.size() - h.payload_offset) / sample < n) {
        throw TruncatedDataError("label data truncated: expected " + std::to_string(n * sample) + " bytes",
                                 bytes.size());
    }
    std::vector<std::uint32_t> labels(n);
    const std::uint8_t* p = bytes.data() + h.payload_offset;
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = sample == 2 ? (static_cast<std::uint32_t>(p[2 * i]) << 8) | p[2 * i + 1] : p[i];
    }
    return LabelMap(h.width, h.height, std::move(labels));
}

/// Fixed palette color for a label; label 0 is black.
inline std::array<std::uint8_t, 3> label_color(std::uint32_t label) {
    static constexpr std::array<std::array<std::uint8_t, 3>, 12> palette{{
        {230, 25, 75},  {60, 180, 75},  {255, 225, 25}, {0, 130, 200},  {245, 130, 48}, {145, 30, 180},
        {70, 240, 240}, {240, 50, 230}, {210, 245, 60}, {250, 190, 190}, {0, 128, 128}, {170, 110, 40},
    }};
    if (label == 0) return {0, 0, 0};
    return palette[(label - 1) % palette.size()];
}

/// False-color P6 rendering of a label map.
inline Bytes write_label_ppm(const LabelMap& lm) {
    Bytes out;
    detail::append_header(out, '6', lm.width(), lm.height(), 255);
    out.reserve(out.size() + 3 * lm.size());
    for (std::uint32_t v : lm.pixels()) {
        const auto c = label_color(v);
        out.insert(out.end(), c.begin(), c.end());
    }
    return out;
}

inline Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path + " for reading");
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error while reading " + path);
    return data;
}

inline void write_file(const std::string& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw IoError("error while writing " + path);
}

inline void write_file(const std::string& path, const std::string& text) {
    write_file(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace seedgrow
