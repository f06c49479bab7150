#include "textcc/verify.hpp"

#include <algorithm>
#include <stdexcept>

namespace textcc {

void CharacterBox::validate() const {
    if (x_min >= x_max || y_min >= y_max)
        throw std::invalid_argument("degenerate character box [" + std::to_string(x_min) + "," +
                                    std::to_string(y_min) + "," + std::to_string(x_max) + "," +
                                    std::to_string(y_max) + "]");
    if (confidence < 0.0 || confidence > 1.0)
        throw std::invalid_argument("character confidence outside [0,1]");
    if (class_id < 0 || class_id > 94)
        throw std::invalid_argument("character class id outside [0,94]");
}

void VerificationConfig::validate() const {
    if (min_confidence < 0.0 || min_confidence > 1.0)
        throw std::invalid_argument("min_confidence outside [0,1]");
    if (support_ratio < 0.0 || support_ratio > 1.0)
        throw std::invalid_argument("support_ratio outside [0,1]");
}

const char* to_string(RejectReason r) {
    (void)r;
    return "no_character_support";
}

double fill_ratio(const CharacterBox& box, const BinaryMask& mask) {
    box.validate();
    long long covered = 0;
    const int x0 = std::max(box.x_min, 0);
    const int y0 = std::max(box.y_min, 0);
    const int x1 = std::min(box.x_max, mask.width);
    const int y1 = std::min(box.y_max, mask.height);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x)
            if (mask.at(x, y)) ++covered;
    return static_cast<double>(covered) / static_cast<double>(box.area());
}

double fill_ratio(const CharacterBox& box, const std::vector<Pixel>& pixels) {
    box.validate();
    std::vector<Pixel> sorted = pixels;
    std::sort(sorted.begin(), sorted.end());
    long long covered = 0;
    for (int y = box.y_min; y < box.y_max; ++y)
        for (int x = box.x_min; x < box.x_max; ++x)
            if (std::binary_search(sorted.begin(), sorted.end(), Pixel{x, y})) ++covered;
    return static_cast<double>(covered) / static_cast<double>(box.area());
}

namespace {

// pixels assumed sorted row-major.
long long covered_count(const CharacterBox& box, const std::vector<Pixel>& pixels) {
    long long covered = 0;
    for (int y = box.y_min; y < box.y_max; ++y) {
        auto lo = std::lower_bound(pixels.begin(), pixels.end(), Pixel{box.x_min, y});
        auto hi = std::lower_bound(lo, pixels.end(), Pixel{box.x_max, y});
        covered += hi - lo;
    }
    return covered;
}

}  // namespace

std::vector<int> supporting_chars(const std::vector<Pixel>& pixels,
                                  const std::vector<CharacterBox>& chars,
                                  const VerificationConfig& cfg) {
    cfg.validate();
    std::vector<int> out;
    for (size_t k = 0; k < chars.size(); ++k) {
        const CharacterBox& box = chars[k];
        box.validate();
        if (box.confidence < cfg.min_confidence) continue;
        const double ratio =
            static_cast<double>(covered_count(box, pixels)) / static_cast<double>(box.area());
        if (ratio >= cfg.support_ratio) out.push_back(static_cast<int>(k));
    }
    return out;
}

VerifiedResult verify_proposals(const std::vector<WordProposal>& proposals,
                                const std::vector<CharacterBox>& chars,
                                const VerificationConfig& cfg) {
    cfg.validate();
    VerifiedResult result;
    for (const WordProposal& p : proposals) {
        std::vector<int> support = supporting_chars(p.pixels, chars, cfg);
        if (!support.empty()) {
            result.accepted.push_back(p);
            result.accepted_support.push_back(std::move(support));
        } else {
            result.rejected.emplace_back(p, RejectReason::no_character_support);
        }
    }
    return result;
}

}  // namespace textcc
