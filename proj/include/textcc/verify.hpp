#pragma once

#include <string>
#include <utility>
#include <vector>

#include "textcc/proposals.hpp"
#include "textcc/raster.hpp"

namespace textcc {

// Axis-aligned character detection, half-open pixel coordinates:
// pixel (x,y) is inside iff x_min <= x < x_max and y_min <= y < y_max.
struct CharacterBox {
    int x_min = 0;
    int y_min = 0;
    int x_max = 0;
    int y_max = 0;
    int class_id = 0;  // 0 = background, 1..94 = ASCII classes
    double confidence = 0.0;

    int width() const { return x_max - x_min; }
    int height() const { return y_max - y_min; }
    long long area() const { return static_cast<long long>(width()) * height(); }
    bool contains(int x, int y) const {
        return x >= x_min && x < x_max && y >= y_min && y < y_max;
    }
    void validate() const;
};

struct VerificationConfig {
    double min_confidence = 0.7;
    double support_ratio = 0.3;

    void validate() const;
};

enum class RejectReason { no_character_support };

const char* to_string(RejectReason r);

struct VerifiedResult {
    std::vector<WordProposal> accepted;
    // Indices into the character list, one vector per accepted proposal.
    std::vector<std::vector<int>> accepted_support;
    std::vector<std::pair<WordProposal, RejectReason>> rejected;
};

// Fraction of the box interior covered by foreground. The denominator is
// the full box area, including any part outside the mask frame.
double fill_ratio(const CharacterBox& box, const BinaryMask& mask);
double fill_ratio(const CharacterBox& box, const std::vector<Pixel>& pixels);

// Characters supporting a pixel set: confidence >= min_confidence and
// fill ratio against the set >= support_ratio. pixels must be sorted
// row-major. This predicate is shared with the consistency loss.
std::vector<int> supporting_chars(const std::vector<Pixel>& pixels,
                                  const std::vector<CharacterBox>& chars,
                                  const VerificationConfig& cfg);

// A proposal passes iff at least one character supports it.
VerifiedResult verify_proposals(const std::vector<WordProposal>& proposals,
                                const std::vector<CharacterBox>& chars,
                                const VerificationConfig& cfg);

}  // namespace textcc
