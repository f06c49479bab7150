#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace textcc {

// Integer pixel coordinate. Row-major order (y first, then x) is the
// canonical iteration and sort order throughout the library.
struct Pixel {
    int x = 0;
    int y = 0;

    friend bool operator==(const Pixel& a, const Pixel& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Pixel& a, const Pixel& b) { return !(a == b); }
    friend bool operator<(const Pixel& a, const Pixel& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
    }
};

enum class Connectivity { four, eight };

const char* to_string(Connectivity c);
Connectivity connectivity_from_string(const std::string& s);

// Dense per-pixel saliency in [0,1], row-major.
struct ProbabilityMap {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    ProbabilityMap() = default;
    ProbabilityMap(int w, int h, double fill = 0.0);

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    double at(int x, int y) const { return values[static_cast<size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<size_t>(y) * width + x]; }

    // Throws std::invalid_argument if dimensions or value range are broken.
    void validate() const;
};

// Thresholded foreground mask, row-major, one byte per pixel (0 or 1).
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false);

    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
    bool at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { bits[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }

    size_t foreground_count() const;
    std::vector<Pixel> foreground_pixels() const;

    friend bool operator==(const BinaryMask& a, const BinaryMask& b) {
        return a.width == b.width && a.height == b.height && a.bits == b.bits;
    }
};

// Integer component labeling of a mask. 0 is background; positive labels are
// contiguous 1..component_count, assigned in row-major first-encounter order.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    int component_count = 0;

    LabelMap() = default;
    LabelMap(int w, int h);

    int at(int x, int y) const { return labels[static_cast<size_t>(y) * width + x]; }
    int& at(int x, int y) { return labels[static_cast<size_t>(y) * width + x]; }
};

// Foreground is every pixel with value >= t, so t = 0 selects everything.
BinaryMask threshold_map(const ProbabilityMap& map, double t);

// Two-pass union-find labeling under the given connectivity.
LabelMap connected_components(const BinaryMask& mask, Connectivity conn);

// Pixels carrying the given label, in row-major order.
// Throws std::out_of_range when label is outside 1..component_count.
std::vector<Pixel> component_pixels(const LabelMap& lm, int label);

}  // namespace textcc
