#include "textcc/loss.hpp"

#include <algorithm>
#include <stdexcept>

namespace textcc {

void LossConfig::validate() const {
    if (tau < 0.0 || tau > 1.0) throw std::invalid_argument("tau outside [0,1]");
    if (min_confidence < 0.0 || min_confidence > 1.0)
        throw std::invalid_argument("min_confidence outside [0,1]");
}

std::vector<Pixel> phi_det(const std::vector<CharacterBox>& chars, const LossConfig& cfg,
                           int width, int height) {
    cfg.validate();
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("phi_det frame dimensions must be positive");
    std::vector<std::uint8_t> hit(static_cast<size_t>(width) * height, 0);
    for (const CharacterBox& box : chars) {
        box.validate();
        if (box.confidence < cfg.min_confidence) continue;
        const int x0 = std::max(box.x_min, 0);
        const int y0 = std::max(box.y_min, 0);
        const int x1 = std::min(box.x_max, width);
        const int y1 = std::min(box.y_max, height);
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) hit[static_cast<size_t>(y) * width + x] = 1;
    }
    std::vector<Pixel> out;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (hit[static_cast<size_t>(y) * width + x]) out.push_back({x, y});
    return out;
}

std::vector<Pixel> psi_seg(const std::vector<WordProposal>& segments,
                           const std::vector<CharacterBox>& chars, const LossConfig& cfg,
                           double support_ratio) {
    cfg.validate();
    VerificationConfig vcfg;
    vcfg.min_confidence = cfg.min_confidence;
    vcfg.support_ratio = support_ratio;

    std::vector<Pixel> out;
    for (const WordProposal& seg : segments)
        if (supporting_chars(seg.pixels, chars, vcfg).empty())
            out.insert(out.end(), seg.pixels.begin(), seg.pixels.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LossReport compute_consistency_loss(const BinaryMask& word_mask,
                                    const std::vector<WordProposal>& segments,
                                    const std::vector<CharacterBox>& chars,
                                    const LossConfig& cfg, double support_ratio) {
    cfg.validate();
    LossReport report;

    const std::vector<Pixel> phi = phi_det(chars, cfg, word_mask.width, word_mask.height);
    report.n_phi = static_cast<long long>(phi.size());
    long long misses = 0;  // confident-box pixels the mask does not cover
    for (const Pixel& p : phi)
        if (!word_mask.at(p.x, p.y)) ++misses;

    const std::vector<Pixel> psi = psi_seg(segments, chars, cfg, support_ratio);
    report.m_psi = static_cast<long long>(psi.size());
    long long covered = 0;  // unsupported-segment pixels the mask does cover
    for (const Pixel& p : psi) {
        if (!word_mask.in_bounds(p.x, p.y))
            throw std::invalid_argument("segment pixel (" + std::to_string(p.x) + "," +
                                        std::to_string(p.y) + ") outside mask of " +
                                        std::to_string(word_mask.width) + "x" +
                                        std::to_string(word_mask.height));
        if (word_mask.at(p.x, p.y)) ++covered;
    }

    double l1 = 0.0;
    if (report.n_phi > 0) l1 += static_cast<double>(misses) / (2.0 * report.n_phi);
    if (report.m_psi > 0) l1 += static_cast<double>(covered) / (2.0 * report.m_psi);
    report.l1 = l1;

    long long low_ratio = 0;
    for (const CharacterBox& box : chars) {
        if (box.confidence < cfg.min_confidence) continue;
        const double ratio = fill_ratio(box, word_mask);
        report.per_box_ratio.push_back(ratio);
        if (ratio < cfg.tau) ++low_ratio;
    }
    report.k_boxes = static_cast<long long>(report.per_box_ratio.size());
    report.l2 = report.k_boxes > 0
                    ? static_cast<double>(low_ratio) / (2.0 * report.k_boxes)
                    : 0.0;

    report.total = report.l1 + report.l2;
    return report;
}

}  // namespace textcc
