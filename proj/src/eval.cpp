#include "textcc/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace textcc {

Quad quad_from_axis_box(const AxisBox& box) {
    return {Point2d{static_cast<double>(box.x_min), static_cast<double>(box.y_min)},
            Point2d{static_cast<double>(box.x_max), static_cast<double>(box.y_min)},
            Point2d{static_cast<double>(box.x_max), static_cast<double>(box.y_max)},
            Point2d{static_cast<double>(box.x_min), static_cast<double>(box.y_max)}};
}

GroundTruthWord GroundTruthWord::from_axis_box(const AxisBox& box, bool ignore) {
    return {quad_from_axis_box(box), ignore};
}

double f_score(double recall, double precision) {
    if (recall < 0.0 || recall > 1.0 || precision < 0.0 || precision > 1.0)
        throw std::invalid_argument("recall/precision outside [0,1]");
    const double denom = recall + precision;
    return denom > 0.0 ? 2.0 * recall * precision / denom : 0.0;
}

std::vector<Pixel> rasterize_quad(const Quad& quad) {
    double min_x = quad[0].x, max_x = quad[0].x, min_y = quad[0].y, max_y = quad[0].y;
    for (const Point2d& p : quad) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }

    // Signed area decides the winding; inside = same side of all edges,
    // boundary included.
    double signed_area = 0.0;
    for (int i = 0; i < 4; ++i) {
        const Point2d& a = quad[i];
        const Point2d& b = quad[(i + 1) % 4];
        signed_area += a.x * b.y - b.x * a.y;
    }
    const double orient = signed_area >= 0.0 ? 1.0 : -1.0;

    std::vector<Pixel> out;
    const int y0 = static_cast<int>(std::floor(min_y));
    const int y1 = static_cast<int>(std::ceil(max_y));
    const int x0 = static_cast<int>(std::floor(min_x));
    const int x1 = static_cast<int>(std::ceil(max_x));
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            const double cx = x + 0.5;
            const double cy = y + 0.5;
            bool inside = true;
            for (int i = 0; i < 4 && inside; ++i) {
                const Point2d& a = quad[i];
                const Point2d& b = quad[(i + 1) % 4];
                const double c = (b.x - a.x) * (cy - a.y) - (b.y - a.y) * (cx - a.x);
                if (orient * c < 0.0) inside = false;
            }
            if (inside) out.push_back({x, y});
        }
    }
    return out;
}

double quad_iou(const Quad& a, const Quad& b) {
    std::vector<Pixel> ra = rasterize_quad(a);
    std::vector<Pixel> rb = rasterize_quad(b);
    std::sort(ra.begin(), ra.end());
    std::sort(rb.begin(), rb.end());
    std::vector<Pixel> inter;
    std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(inter));
    const size_t uni = ra.size() + rb.size() - inter.size();
    return uni == 0 ? 0.0 : static_cast<double>(inter.size()) / static_cast<double>(uni);
}

namespace {

struct Candidate {
    double score;
    int gt;
    int det;
};

std::vector<std::vector<Pixel>> rasterize_all(const std::vector<Quad>& quads) {
    std::vector<std::vector<Pixel>> out;
    out.reserve(quads.size());
    for (const Quad& q : quads) {
        std::vector<Pixel> r = rasterize_quad(q);
        std::sort(r.begin(), r.end());
        out.push_back(std::move(r));
    }
    return out;
}

size_t intersection_count(const std::vector<Pixel>& a, const std::vector<Pixel>& b) {
    size_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

void finish_report(MatchReport& report) {
    report.recall = report.gt_considered > 0
                        ? report.recall_accum / static_cast<double>(report.gt_considered)
                        : 0.0;
    report.precision = report.det_considered > 0
                           ? report.precision_accum / static_cast<double>(report.det_considered)
                           : 0.0;
    report.f_score = f_score(report.recall, report.precision);
}

}  // namespace

MatchReport match_one_to_one(const std::vector<GroundTruthWord>& gt, const std::vector<Quad>& det,
                             double iou_threshold) {
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0))
        throw std::invalid_argument("iou_threshold outside (0,1]");

    std::vector<Quad> gt_quads;
    gt_quads.reserve(gt.size());
    for (const GroundTruthWord& g : gt) gt_quads.push_back(g.quad);
    const auto gt_px = rasterize_all(gt_quads);
    const auto det_px = rasterize_all(det);

    std::vector<Candidate> candidates;
    for (size_t i = 0; i < gt.size(); ++i) {
        for (size_t j = 0; j < det.size(); ++j) {
            const size_t inter = intersection_count(gt_px[i], det_px[j]);
            if (inter == 0) continue;
            const size_t uni = gt_px[i].size() + det_px[j].size() - inter;
            const double iou = static_cast<double>(inter) / static_cast<double>(uni);
            if (iou >= iou_threshold)
                candidates.push_back({iou, static_cast<int>(i), static_cast<int>(j)});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.gt != b.gt) return a.gt < b.gt;
        return a.det < b.det;
    });

    std::vector<std::uint8_t> gt_used(gt.size(), 0), det_used(det.size(), 0);
    std::vector<std::uint8_t> det_on_ignored(det.size(), 0);
    MatchReport report;
    for (const Candidate& c : candidates) {
        if (gt_used[c.gt] || det_used[c.det]) continue;
        gt_used[c.gt] = 1;
        det_used[c.det] = 1;
        if (gt[c.gt].ignore)
            det_on_ignored[c.det] = 1;
        else
            report.pairs.push_back({c.gt, c.det, c.score});
    }

    long long matched = static_cast<long long>(report.pairs.size());
    for (size_t i = 0; i < gt.size(); ++i) {
        if (gt[i].ignore) continue;
        ++report.gt_considered;
        if (!gt_used[i]) report.unmatched_gt.push_back(static_cast<int>(i));
    }
    for (size_t j = 0; j < det.size(); ++j) {
        if (det_on_ignored[j]) continue;
        ++report.det_considered;
        if (!det_used[j]) report.unmatched_det.push_back(static_cast<int>(j));
    }
    report.recall_accum = static_cast<double>(matched);
    report.precision_accum = static_cast<double>(matched);
    finish_report(report);
    return report;
}

MatchReport match_deteval(const std::vector<GroundTruthWord>& gt, const std::vector<Quad>& det,
                          double tr, double tp) {
    std::vector<Quad> gt_quads;
    gt_quads.reserve(gt.size());
    for (const GroundTruthWord& g : gt) gt_quads.push_back(g.quad);
    const auto gt_px = rasterize_all(gt_quads);
    const auto det_px = rasterize_all(det);

    const size_t ng = gt.size();
    const size_t nd = det.size();
    // sigma: area recall (intersection / gt area); taupm: area precision.
    std::vector<std::vector<double>> sigma(ng, std::vector<double>(nd, 0.0));
    std::vector<std::vector<double>> taupm(ng, std::vector<double>(nd, 0.0));
    for (size_t i = 0; i < ng; ++i) {
        for (size_t j = 0; j < nd; ++j) {
            const size_t inter = intersection_count(gt_px[i], det_px[j]);
            if (!gt_px[i].empty()) sigma[i][j] = static_cast<double>(inter) / gt_px[i].size();
            if (!det_px[j].empty()) taupm[i][j] = static_cast<double>(inter) / det_px[j].size();
        }
    }

    std::vector<std::uint8_t> gt_done(ng, 0), det_done(nd, 0);
    std::vector<std::uint8_t> det_on_ignored(nd, 0);
    std::vector<double> gt_score(ng, 0.0), det_score(nd, 0.0);
    MatchReport report;

    auto qualified = [&](size_t i, size_t j) { return sigma[i][j] >= tr && taupm[i][j] >= tp; };

    // Detections dominated by a don't-care region are set aside first.
    for (size_t j = 0; j < nd; ++j)
        for (size_t i = 0; i < ng; ++i)
            if (gt[i].ignore && taupm[i][j] >= tp) det_on_ignored[j] = 1;

    // Pass 1: one-to-one matches, unique qualified partner on both sides.
    for (size_t i = 0; i < ng; ++i) {
        if (gt[i].ignore) continue;
        int only = -1;
        int count = 0;
        for (size_t j = 0; j < nd; ++j) {
            if (det_on_ignored[j]) continue;
            if (qualified(i, j)) {
                only = static_cast<int>(j);
                ++count;
            }
        }
        if (count != 1) continue;
        int back_count = 0;
        for (size_t i2 = 0; i2 < ng; ++i2)
            if (!gt[i2].ignore && qualified(i2, only)) ++back_count;
        if (back_count != 1) continue;
        gt_done[i] = 1;
        det_done[only] = 1;
        gt_score[i] = 1.0;
        det_score[only] = 1.0;
        report.pairs.push_back({static_cast<int>(i), only, sigma[i][only]});
    }

    const double kFragmentPenalty = 0.8;

    // Pass 2: one gt split across several detections.
    for (size_t i = 0; i < ng; ++i) {
        if (gt[i].ignore || gt_done[i]) continue;
        double sum = 0.0;
        std::vector<int> members;
        for (size_t j = 0; j < nd; ++j) {
            if (det_done[j] || det_on_ignored[j]) continue;
            if (taupm[i][j] >= tp) {
                sum += sigma[i][j];
                members.push_back(static_cast<int>(j));
            }
        }
        if (members.size() >= 2 && sum >= tr) {
            gt_done[i] = 1;
            gt_score[i] = kFragmentPenalty;
            for (int j : members) {
                det_done[j] = 1;
                det_score[j] = kFragmentPenalty;
                report.pairs.push_back({static_cast<int>(i), j, sigma[i][j]});
            }
        }
    }

    // Pass 3: several gts merged into one detection.
    for (size_t j = 0; j < nd; ++j) {
        if (det_done[j] || det_on_ignored[j]) continue;
        double sum = 0.0;
        std::vector<int> members;
        for (size_t i = 0; i < ng; ++i) {
            if (gt[i].ignore || gt_done[i]) continue;
            if (sigma[i][j] >= tr) {
                sum += taupm[i][j];
                members.push_back(static_cast<int>(i));
            }
        }
        if (members.size() >= 2 && sum >= tp) {
            det_done[j] = 1;
            det_score[j] = kFragmentPenalty;
            for (int i : members) {
                gt_done[i] = 1;
                gt_score[i] = kFragmentPenalty;
                report.pairs.push_back({i, static_cast<int>(j), sigma[i][j]});
            }
        }
    }

    for (size_t i = 0; i < ng; ++i) {
        if (gt[i].ignore) continue;
        ++report.gt_considered;
        report.recall_accum += gt_score[i];
        if (!gt_done[i]) report.unmatched_gt.push_back(static_cast<int>(i));
    }
    for (size_t j = 0; j < nd; ++j) {
        if (det_on_ignored[j]) continue;
        ++report.det_considered;
        report.precision_accum += det_score[j];
        if (!det_done[j]) report.unmatched_det.push_back(static_cast<int>(j));
    }
    finish_report(report);
    return report;
}

}  // namespace textcc
