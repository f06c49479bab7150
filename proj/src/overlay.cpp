#include "textcc/overlay.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace textcc {
namespace {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
};

// Distinct tints cycled by proposal id.
constexpr std::array<Rgb, 10> kPalette = {{{90, 160, 255},
                                           {255, 150, 80},
                                           {120, 220, 120},
                                           {230, 120, 230},
                                           {250, 220, 90},
                                           {90, 220, 220},
                                           {250, 120, 140},
                                           {160, 140, 255},
                                           {170, 220, 90},
                                           {240, 170, 200}}};

class Canvas {
  public:
    Canvas(int w, int h) : width_(w), height_(h), rgb_(static_cast<std::size_t>(w) * h * 3) {}

    void put(int x, int y, Rgb c) {
        if (x < 0 || x >= width_ || y < 0 || y >= height_) return;
        const std::size_t i = (static_cast<std::size_t>(y) * width_ + x) * 3;
        rgb_[i] = c.r;
        rgb_[i + 1] = c.g;
        rgb_[i + 2] = c.b;
    }

    void line(int x0, int y0, int x1, int y1, Rgb c) {
        const int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
        const int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        while (true) {
            put(x0, y0, c);
            if (x0 == x1 && y0 == y1) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }

    // Outline of a half-open box, drawn on its border pixels.
    void box(int x_min, int y_min, int x_max, int y_max, Rgb c) {
        if (x_min >= x_max || y_min >= y_max) return;
        line(x_min, y_min, x_max - 1, y_min, c);
        line(x_min, y_max - 1, x_max - 1, y_max - 1, c);
        line(x_min, y_min, x_min, y_max - 1, c);
        line(x_max - 1, y_min, x_max - 1, y_max - 1, c);
    }

    std::vector<std::uint8_t> take() { return std::move(rgb_); }

  private:
    int width_;
    int height_;
    std::vector<std::uint8_t> rgb_;
};

int round_coord(double v) { return static_cast<int>(std::lround(v)); }

}  // namespace

std::vector<std::uint8_t> render_overlay(const ProbabilityMap& word_map,
                                         const DetectOutputs& outputs,
                                         const std::vector<CharacterBox>& chars,
                                         double min_confidence) {
    word_map.validate();
    Canvas canvas(word_map.width, word_map.height);

    for (int y = 0; y < word_map.height; ++y) {
        for (int x = 0; x < word_map.width; ++x) {
            const auto v = static_cast<std::uint8_t>(std::lround(word_map.at(x, y) * 110.0));
            canvas.put(x, y, {v, v, v});
        }
    }
    for (const WordProposal& prop : outputs.proposals) {
        const Rgb tint = kPalette[static_cast<std::size_t>(prop.proposal_id) % kPalette.size()];
        for (const Pixel& p : prop.pixels) canvas.put(p.x, p.y, tint);
    }
    for (const CharacterBox& c : chars) {
        const bool confident = c.confidence >= min_confidence;
        const Rgb color = confident ? Rgb{255, 235, 59} : Rgb{120, 110, 60};
        canvas.box(c.x_min, c.y_min, c.x_max, c.y_max, color);
    }
    for (const RejectedRecord& rec : outputs.doc.rejected) {
        canvas.box(rec.box.x_min, rec.box.y_min, rec.box.x_max, rec.box.y_max, {220, 40, 40});
    }
    for (const DetectionRecord& rec : outputs.doc.words) {
        for (int i = 0; i < 4; ++i) {
            const Point2d& a = rec.quad.corners[i];
            const Point2d& b = rec.quad.corners[(i + 1) % 4];
            canvas.line(round_coord(a.x), round_coord(a.y), round_coord(b.x), round_coord(b.y),
                        {40, 230, 90});
        }
    }
    return canvas.take();
}

}  // namespace textcc
