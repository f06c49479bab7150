#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "textcc/raster.hpp"

namespace textcc {

struct Point2d {
    double x = 0.0;
    double y = 0.0;
};

// Half-open axis-aligned box in pixel coordinates.
struct AxisBox {
    int x_min = 0;
    int y_min = 0;
    int x_max = 0;
    int y_max = 0;

    long long area() const {
        return static_cast<long long>(x_max - x_min) * (y_max - y_min);
    }
    friend bool operator==(const AxisBox& a, const AxisBox& b) {
        return a.x_min == b.x_min && a.y_min == b.y_min && a.x_max == b.x_max &&
               a.y_max == b.y_max;
    }
};

// Oriented rectangle in real pixel coordinates. Canonical form: width >=
// height, angle of the width axis in [-90, 90) degrees ([-45, 45) for
// squares), corners listed from the (-w/2, -h/2) local corner onward.
struct RotatedRect {
    std::array<Point2d, 4> corners{};
    Point2d center{};
    double angle_deg = 0.0;
    double width = 0.0;
    double height = 0.0;

    double area() const { return width * height; }
    bool contains(const Point2d& p, double eps = 1e-9) const;
};

struct Point64 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend bool operator==(const Point64& a, const Point64& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Point64& a, const Point64& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    }
};

// Convex hull (monotone chain, collinear points dropped), counterclockwise
// in a y-up frame. Exact integer predicates.
std::vector<Point64> convex_hull(std::vector<Point64> points);

// The four unit-square corners of every pixel, deduplicated.
std::vector<Point64> pixel_corner_cloud(const std::vector<Pixel>& pixels);

// Tightest half-open box over pixel coordinates. Throws on empty input.
AxisBox axis_aligned_bbox(const std::vector<Pixel>& pixels);

// Minimum-area enclosing rectangle of the pixel unit squares, found by
// scanning hull-edge-aligned candidates (an optimal rectangle has a side
// collinear with a hull edge). Throws on empty input.
RotatedRect min_area_rect(const std::vector<Pixel>& pixels);

// Rectangle from center, size and angle, normalized to the canonical form.
RotatedRect make_rotated_rect(Point2d center, double width, double height, double angle_deg);

}  // namespace textcc
