#include "textcc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace textcc {

namespace {

std::int64_t cross(const Point64& o, const Point64& a, const Point64& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::vector<Point64> convex_hull(std::vector<Point64> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const size_t n = points.size();
    if (n <= 2) return points;

    std::vector<Point64> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower hull
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
        while (k >= t && cross(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::vector<Point64> pixel_corner_cloud(const std::vector<Pixel>& pixels) {
    std::vector<Point64> points;
    points.reserve(pixels.size() * 4);
    for (const Pixel& p : pixels) {
        points.push_back({p.x, p.y});
        points.push_back({p.x + 1, p.y});
        points.push_back({p.x, p.y + 1});
        points.push_back({p.x + 1, p.y + 1});
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

AxisBox axis_aligned_bbox(const std::vector<Pixel>& pixels) {
    if (pixels.empty()) throw std::invalid_argument("axis_aligned_bbox of empty pixel set");
    AxisBox box{pixels[0].x, pixels[0].y, pixels[0].x + 1, pixels[0].y + 1};
    for (const Pixel& p : pixels) {
        box.x_min = std::min(box.x_min, p.x);
        box.y_min = std::min(box.y_min, p.y);
        box.x_max = std::max(box.x_max, p.x + 1);
        box.y_max = std::max(box.y_max, p.y + 1);
    }
    return box;
}

bool RotatedRect::contains(const Point2d& p, double eps) const {
    const double rad = angle_deg * kPi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    const double dx = p.x - center.x;
    const double dy = p.y - center.y;
    const double u = dx * c + dy * s;
    const double v = -dx * s + dy * c;
    return std::abs(u) <= width / 2 + eps && std::abs(v) <= height / 2 + eps;
}

RotatedRect make_rotated_rect(Point2d center, double width, double height, double angle_deg) {
    // Canonical orientation: long side first, angle folded into [-90, 90).
    if (width < height) {
        std::swap(width, height);
        angle_deg += 90.0;
    }
    angle_deg = std::fmod(angle_deg, 180.0);
    if (angle_deg < -90.0) angle_deg += 180.0;
    if (angle_deg >= 90.0) angle_deg -= 180.0;
    if (width == height) {
        while (angle_deg >= 45.0) angle_deg -= 90.0;
        while (angle_deg < -45.0) angle_deg += 90.0;
    }

    RotatedRect rect;
    rect.center = center;
    rect.width = width;
    rect.height = height;
    rect.angle_deg = angle_deg;

    const double rad = angle_deg * kPi / 180.0;
    const double c = std::cos(rad);
    const double s = std::sin(rad);
    const double hw = width / 2;
    const double hh = height / 2;
    const double lx[4] = {-hw, hw, hw, -hw};
    const double ly[4] = {-hh, -hh, hh, hh};
    for (int i = 0; i < 4; ++i)
        rect.corners[i] = {center.x + lx[i] * c - ly[i] * s, center.y + lx[i] * s + ly[i] * c};
    return rect;
}

RotatedRect min_area_rect(const std::vector<Pixel>& pixels) {
    if (pixels.empty()) throw std::invalid_argument("min_area_rect of empty pixel set");
    const std::vector<Point64> hull = convex_hull(pixel_corner_cloud(pixels));

    // Pixel input always yields a hull with positive area (every pixel
    // contributes a full unit square), so hull.size() >= 3 here.
    double best_area = std::numeric_limits<double>::infinity();
    double best_u0 = 0, best_u1 = 0, best_v0 = 0, best_v1 = 0;
    double best_ux = 1, best_uy = 0;

    const size_t n = hull.size();
    for (size_t i = 0; i < n; ++i) {
        const Point64& a = hull[i];
        const Point64& b = hull[(i + 1) % n];
        const double ex = static_cast<double>(b.x - a.x);
        const double ey = static_cast<double>(b.y - a.y);
        const double len = std::hypot(ex, ey);
        if (len == 0.0) continue;
        const double ux = ex / len;
        const double uy = ey / len;

        double u0 = std::numeric_limits<double>::infinity(), u1 = -u0;
        double v0 = u0, v1 = -u0;
        for (const Point64& p : hull) {
            const double u = p.x * ux + p.y * uy;
            const double v = -p.x * uy + p.y * ux;
            u0 = std::min(u0, u);
            u1 = std::max(u1, u);
            v0 = std::min(v0, v);
            v1 = std::max(v1, v);
        }
        const double area = (u1 - u0) * (v1 - v0);
        if (area < best_area) {
            best_area = area;
            best_u0 = u0;
            best_u1 = u1;
            best_v0 = v0;
            best_v1 = v1;
            best_ux = ux;
            best_uy = uy;
        }
    }

    const double cu = (best_u0 + best_u1) / 2;
    const double cv = (best_v0 + best_v1) / 2;
    const Point2d center{cu * best_ux - cv * best_uy, cu * best_uy + cv * best_ux};
    const double width = best_u1 - best_u0;
    const double height = best_v1 - best_v0;
    const double angle = std::atan2(best_uy, best_ux) * 180.0 / kPi;
    return make_rotated_rect(center, width, height, angle);
}

}  // namespace textcc
