#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "textcc/eval.hpp"
#include "textcc/geometry.hpp"
#include "textcc/raster.hpp"
#include "textcc/verify.hpp"

namespace textcc {

// One rendered word: glyph_count solid glyph blocks laid out along the
// word axis, rotated about the word center. A dotted word additionally
// carries a small detached block floating above its last glyph, the way a
// "j" carries its dot.
struct WordSpec {
    double center_x = 0.0;
    double center_y = 0.0;
    int glyph_count = 1;
    int glyph_width = 8;
    int glyph_height = 16;
    double angle_deg = 0.0;
    int spacing = 0;  // gap between adjacent glyph cells, in pixels
    bool dotted = false;
};

struct NoiseSpec {
    double pixel_flip_rate = 0.0;
    double box_jitter = 0.0;  // max absolute corner offset, in pixels
    std::pair<double, double> confidence_range{1.0, 1.0};
    int spurious_char_count = 0;
    double drop_char_rate = 0.0;

    bool is_zero() const;
    void validate() const;
};

struct SceneSpec {
    int width = 0;
    int height = 0;
    std::vector<WordSpec> words;
    std::uint64_t rng_seed = 0;
    NoiseSpec noise;

    void validate() const;
};

struct SceneBundle {
    ProbabilityMap word_map;
    ProbabilityMap centerline_map;
    std::vector<CharacterBox> chars;
    std::vector<GroundTruthWord> gt_words;
    LabelMap gt_assignment;  // word index (1-based) owning each foreground pixel
};

// Geometry of the detached dot, shared by rendering and fixtures.
struct DotGeometry {
    int gap = 3;  // analytic gap between word rect top edge and dot bottom
    static int dot_height(int glyph_height) { return glyph_height / 5 < 2 ? 2 : glyph_height / 5; }
};

// Deterministic rendering: maps are {0,1}-valued, the center-line band is
// the middle 50% of each word's height over its full length, one character
// box per glyph with confidence drawn from spec.noise.confidence_range.
// Throws when a word (including its dot) leaves the canvas.
SceneBundle render_scene(const SceneSpec& spec);

// Flip map pixels, jitter and drop character boxes, append spurious boxes
// with confidence from noise.confidence_range. Ground truth is untouched.
// Draw order is fixed: word map flips, center-line flips, per-box drop
// decision, per-surviving-box jitter, then spurious boxes.
SceneBundle apply_noise(const SceneBundle& bundle, const NoiseSpec& noise, std::uint64_t rng_seed);

}  // namespace textcc
