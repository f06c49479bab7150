#include "textcc/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "textcc/rng.hpp"

namespace textcc {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Frame {
    Point2d center;
    double ux, uy;  // word axis
    double half_len, half_height;

    bool inside(double px, double py, double hl, double hh) const {
        const double dx = px - center.x;
        const double dy = py - center.y;
        const double u = dx * ux + dy * uy;
        const double v = -dx * uy + dy * ux;
        return std::abs(u) <= hl && std::abs(v) <= hh;
    }
};

// Largest axis-aligned rectangle inscribed in a w x h rectangle rotated by
// angle_deg, centered at the same point. Classic two-case construction:
// either two corners of the crop touch opposite long sides, or all four
// touch.
void inscribed_axis_rect(double w, double h, double angle_deg, double& out_w, double& out_h) {
    const double a = std::abs(angle_deg) * kPi / 180.0;
    const double sin_a = std::abs(std::sin(a));
    const double cos_a = std::abs(std::cos(a));
    const bool width_longer = w >= h;
    const double side_long = width_longer ? w : h;
    const double side_short = width_longer ? h : w;

    if (side_short <= 2.0 * sin_a * cos_a * side_long || std::abs(sin_a - cos_a) < 1e-10) {
        const double x = 0.5 * side_short;
        if (width_longer) {
            out_w = x / sin_a;
            out_h = x / cos_a;
        } else {
            out_w = x / cos_a;
            out_h = x / sin_a;
        }
    } else {
        const double cos_2a = cos_a * cos_a - sin_a * sin_a;
        out_w = (w * cos_a - h * sin_a) / cos_2a;
        out_h = (h * cos_a - w * sin_a) / cos_2a;
    }
}

// Integer box whose pixel centers all fall inside the centered wr x hr
// axis-aligned window; falls back to the pixel under the center.
CharacterBox shrink_to_box(double cx, double cy, double wr, double hr) {
    const double margin = 1e-7;
    int x0 = static_cast<int>(std::ceil(cx - wr / 2 - 0.5 + margin));
    int x1 = static_cast<int>(std::floor(cx + wr / 2 + 0.5 - margin));
    int y0 = static_cast<int>(std::ceil(cy - hr / 2 - 0.5 + margin));
    int y1 = static_cast<int>(std::floor(cy + hr / 2 + 0.5 - margin));
    if (x1 <= x0 || y1 <= y0) {
        x0 = static_cast<int>(std::floor(cx));
        y0 = static_cast<int>(std::floor(cy));
        x1 = x0 + 1;
        y1 = y0 + 1;
    }
    CharacterBox box;
    box.x_min = x0;
    box.y_min = y0;
    box.x_max = x1;
    box.y_max = y1;
    return box;
}

}  // namespace

bool NoiseSpec::is_zero() const {
    return pixel_flip_rate == 0.0 && box_jitter == 0.0 && spurious_char_count == 0 &&
           drop_char_rate == 0.0;
}

void NoiseSpec::validate() const {
    if (pixel_flip_rate < 0.0 || pixel_flip_rate > 1.0)
        throw std::invalid_argument("pixel_flip_rate outside [0,1]");
    if (drop_char_rate < 0.0 || drop_char_rate > 1.0)
        throw std::invalid_argument("drop_char_rate outside [0,1]");
    if (box_jitter < 0.0) throw std::invalid_argument("box_jitter must be >= 0");
    if (spurious_char_count < 0) throw std::invalid_argument("spurious_char_count must be >= 0");
    if (confidence_range.first < 0.0 || confidence_range.second > 1.0 ||
        confidence_range.first > confidence_range.second)
        throw std::invalid_argument("confidence_range must satisfy 0 <= lo <= hi <= 1");
}

void SceneSpec::validate() const {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("scene canvas dimensions must be positive");
    for (const WordSpec& w : words) {
        if (w.glyph_count < 1) throw std::invalid_argument("glyph_count must be >= 1");
        if (w.glyph_width < 1 || w.glyph_height < 1)
            throw std::invalid_argument("glyph size must be positive");
        if (w.spacing < 0) throw std::invalid_argument("glyph spacing must be >= 0");
    }
    noise.validate();
}

SceneBundle render_scene(const SceneSpec& spec) {
    spec.validate();
    const int W = spec.width;
    const int H = spec.height;

    SceneBundle bundle{ProbabilityMap(W, H, 0.0), ProbabilityMap(W, H, 0.0), {}, {}, LabelMap(W, H)};
    DeterministicRng rng(spec.rng_seed);

    for (size_t wi = 0; wi < spec.words.size(); ++wi) {
        const WordSpec& word = spec.words[wi];
        const double len =
            word.glyph_count * word.glyph_width + (word.glyph_count - 1) * word.spacing;
        const double height = word.glyph_height;
        const double rad = word.angle_deg * kPi / 180.0;

        Frame frame;
        frame.center = {word.center_x, word.center_y};
        frame.ux = std::cos(rad);
        frame.uy = std::sin(rad);
        frame.half_len = len / 2;
        frame.half_height = height / 2;

        const int dot_h = DotGeometry::dot_height(word.glyph_height);
        const int dot_gap = DotGeometry{}.gap;
        // Extent actually occupied, dot included, used for the fit check
        // and for the ground-truth quad.
        const double ext_height = word.dotted ? height + dot_gap + dot_h : height;
        // v axis is (-uy, ux); the dot extends toward negative v, so the
        // extended rectangle's center shifts that way by half the extension.
        const double vshift = (dot_gap + dot_h) / 2.0;
        const Point2d ext_center = word.dotted
                                       ? Point2d{word.center_x + frame.uy * vshift,
                                                 word.center_y - frame.ux * vshift}
                                       : frame.center;

        const RotatedRect gt_rect = make_rotated_rect(ext_center, len, ext_height, word.angle_deg);
        for (const Point2d& c : gt_rect.corners) {
            if (c.x < 0.0 || c.y < 0.0 || c.x > W || c.y > H)
                throw std::invalid_argument("word " + std::to_string(wi + 1) +
                                            " leaves the canvas after rotation");
        }
        bundle.gt_words.push_back({gt_rect.corners, false});

        // Word rectangle and center-line band (middle 50% of the height).
        const AxisBox scan = [&] {
            double mnx = 1e30, mny = 1e30, mxx = -1e30, mxy = -1e30;
            for (const Point2d& c : gt_rect.corners) {
                mnx = std::min(mnx, c.x);
                mny = std::min(mny, c.y);
                mxx = std::max(mxx, c.x);
                mxy = std::max(mxy, c.y);
            }
            return AxisBox{static_cast<int>(std::floor(mnx)), static_cast<int>(std::floor(mny)),
                           static_cast<int>(std::ceil(mxx)), static_cast<int>(std::ceil(mxy))};
        }();

        const bool has_dot = word.dotted;
        double dot_hl = 0, dot_hh = 0, dot_cu = 0, dot_cv = 0;
        if (has_dot) {
            // Dot spans the last glyph cell along the axis.
            const double u1 = frame.half_len;
            const double u0 = u1 - word.glyph_width;
            dot_cu = (u0 + u1) / 2;
            dot_cv = -(height / 2 + dot_gap + dot_h / 2.0);
            dot_hl = word.glyph_width / 2.0;
            dot_hh = dot_h / 2.0;
        }

        for (int y = std::max(0, scan.y_min); y < std::min(H, scan.y_max); ++y) {
            for (int x = std::max(0, scan.x_min); x < std::min(W, scan.x_max); ++x) {
                const double px = x + 0.5;
                const double py = y + 0.5;
                const double dx = px - frame.center.x;
                const double dy = py - frame.center.y;
                const double u = dx * frame.ux + dy * frame.uy;
                const double v = -dx * frame.uy + dy * frame.ux;

                bool fg = std::abs(u) <= frame.half_len && std::abs(v) <= frame.half_height;
                if (!fg && has_dot)
                    fg = std::abs(u - dot_cu) <= dot_hl && std::abs(v - dot_cv) <= dot_hh;
                if (!fg) continue;

                bundle.word_map.at(x, y) = 1.0;
                bundle.gt_assignment.at(x, y) = static_cast<int>(wi) + 1;
                if (std::abs(u) <= frame.half_len && std::abs(v) <= frame.half_height / 2)
                    bundle.centerline_map.at(x, y) = 1.0;
            }
        }

        // One character box per glyph, inscribed in its rotated cell so the
        // box never leaves the rendered word.
        double ins_w = 0, ins_h = 0;
        inscribed_axis_rect(word.glyph_width, word.glyph_height, word.angle_deg, ins_w, ins_h);
        for (int k = 0; k < word.glyph_count; ++k) {
            const double cu = -frame.half_len + k * (word.glyph_width + word.spacing) +
                              word.glyph_width / 2.0;
            const double cx = frame.center.x + cu * frame.ux;
            const double cy = frame.center.y + cu * frame.uy;
            CharacterBox box = shrink_to_box(cx, cy, ins_w, ins_h);
            box.class_id = rng.next_int(1, 94);
            box.confidence =
                rng.next_range(spec.noise.confidence_range.first, spec.noise.confidence_range.second);
            box.validate();
            bundle.chars.push_back(box);
        }
    }

    bundle.gt_assignment.component_count = static_cast<int>(spec.words.size());
    return bundle;
}

SceneBundle apply_noise(const SceneBundle& bundle, const NoiseSpec& noise,
                        std::uint64_t rng_seed) {
    noise.validate();
    SceneBundle out = bundle;
    DeterministicRng rng(rng_seed);

    auto flip_map = [&](ProbabilityMap& map) {
        if (noise.pixel_flip_rate == 0.0) return;
        for (double& v : map.values)
            if (rng.next_bernoulli(noise.pixel_flip_rate)) v = 1.0 - v;
    };
    flip_map(out.word_map);
    flip_map(out.centerline_map);

    std::vector<CharacterBox> chars;
    for (const CharacterBox& box : out.chars) {
        if (noise.drop_char_rate > 0.0 && rng.next_bernoulli(noise.drop_char_rate)) continue;
        chars.push_back(box);
    }
    if (noise.box_jitter > 0.0) {
        const int j = static_cast<int>(std::llround(noise.box_jitter));
        for (CharacterBox& box : chars) {
            box.x_min += rng.next_int(-j, j);
            box.y_min += rng.next_int(-j, j);
            box.x_max += rng.next_int(-j, j);
            box.y_max += rng.next_int(-j, j);
            if (box.x_max <= box.x_min) box.x_max = box.x_min + 1;
            if (box.y_max <= box.y_min) box.y_max = box.y_min + 1;
        }
    }
    const int W = out.word_map.width;
    const int H = out.word_map.height;
    for (int i = 0; i < noise.spurious_char_count; ++i) {
        CharacterBox box;
        const int w = rng.next_int(2, std::min(20, W));
        box.x_min = rng.next_int(0, W - w);
        box.x_max = box.x_min + w;
        const int h = rng.next_int(2, std::min(20, H));
        box.y_min = rng.next_int(0, H - h);
        box.y_max = box.y_min + h;
        box.class_id = rng.next_int(1, 94);
        box.confidence = rng.next_range(noise.confidence_range.first, noise.confidence_range.second);
        chars.push_back(box);
    }
    out.chars = std::move(chars);
    return out;
}

}  // namespace textcc
