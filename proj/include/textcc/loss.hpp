#pragma once

#include <vector>

#include "textcc/proposals.hpp"
#include "textcc/raster.hpp"
#include "textcc/verify.hpp"

namespace textcc {

struct LossConfig {
    double tau = 0.5;             // fill-ratio threshold for the box penalty
    double min_confidence = 0.7;  // admission cutoff for character boxes

    void validate() const;
};

struct LossReport {
    double l1 = 0.0;
    double l2 = 0.0;
    double total = 0.0;
    long long n_phi = 0;   // N: pixels inside confident character boxes
    long long m_psi = 0;   // M: pixels of unsupported word segments
    long long k_boxes = 0; // K: confident boxes entering the box penalty
    std::vector<double> per_box_ratio;  // one per counted box, input order
};

// Union of interior pixels of boxes with confidence >= min_confidence,
// clipped to the frame. Row-major order.
std::vector<Pixel> phi_det(const std::vector<CharacterBox>& chars, const LossConfig& cfg,
                           int width, int height);

// Union of the pixels of segments that no character supports. The support
// predicate is the one used by proposal verification.
std::vector<Pixel> psi_seg(const std::vector<WordProposal>& segments,
                           const std::vector<CharacterBox>& chars, const LossConfig& cfg,
                           double support_ratio);

// Both penalty parts, computed exactly:
//   l1 = (1/2N) * sum over phi_det of (1 - s_i)  +  (1/2M) * sum over psi_seg of s_j
//   l2 = (1/2K) * count of boxes whose mask fill ratio falls below tau
// with an empty index set contributing zero. s is the word mask bit and the
// box ratio is measured against the full word mask.
LossReport compute_consistency_loss(const BinaryMask& word_mask,
                                    const std::vector<WordProposal>& segments,
                                    const std::vector<CharacterBox>& chars,
                                    const LossConfig& cfg, double support_ratio);

}  // namespace textcc
