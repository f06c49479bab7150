#pragma once

#include <array>
#include <vector>

#include "textcc/geometry.hpp"
#include "textcc/raster.hpp"

namespace textcc {

using Quad = std::array<Point2d, 4>;

Quad quad_from_axis_box(const AxisBox& box);

// Word-level ground truth. Axis boxes are stored as their four corners.
// ignore marks don't-care regions that count neither as hits nor misses.
struct GroundTruthWord {
    Quad quad{};
    bool ignore = false;

    static GroundTruthWord from_axis_box(const AxisBox& box, bool ignore = false);
};

struct MatchPair {
    int gt = 0;
    int det = 0;
    double score = 0.0;
};

struct MatchReport {
    std::vector<MatchPair> pairs;
    std::vector<int> unmatched_gt;   // non-ignored ground truth left unmatched
    std::vector<int> unmatched_det;  // detections left unmatched (ignored-region hits excluded)
    double recall = 0.0;
    double precision = 0.0;
    double f_score = 0.0;
    // Denominators, kept for aggregation across images.
    long long gt_considered = 0;
    long long det_considered = 0;
    double recall_accum = 0.0;     // numerators (fractional under deteval)
    double precision_accum = 0.0;
};

// Harmonic mean, zero when both inputs are zero.
double f_score(double recall, double precision);

// Pixels whose centers fall inside the convex quad. Quads may use either
// winding. Exact at half-integer centers against integer-coordinate edges.
std::vector<Pixel> rasterize_quad(const Quad& quad);

// Intersection over union of the rasterized regions.
double quad_iou(const Quad& a, const Quad& b);

// Greedy one-to-one matching in descending IoU order at the given
// threshold. Ignored ground truth absorbs detections without scoring them.
MatchReport match_one_to_one(const std::vector<GroundTruthWord>& gt,
                             const std::vector<Quad>& det, double iou_threshold);

// DetEval-style scoring: one-to-one, one-to-many and many-to-one matches
// under area-recall/area-precision constraints. The constants tr = 0.8,
// tp = 0.4 and the 0.8 penalty for fragmented matches follow the external
// DetEval convention.
MatchReport match_deteval(const std::vector<GroundTruthWord>& gt, const std::vector<Quad>& det,
                          double tr = 0.8, double tp = 0.4);

}  // namespace textcc
