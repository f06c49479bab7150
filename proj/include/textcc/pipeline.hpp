#pragma once

#include <vector>

#include "textcc/config.hpp"
#include "textcc/geometry.hpp"
#include "textcc/proposals.hpp"
#include "textcc/raster.hpp"
#include "textcc/verify.hpp"

namespace textcc {

struct DetectionRecord {
    int id = 0;
    AxisBox box;
    RotatedRect quad;
    std::vector<int> supporting_chars;  // indices into the character list
};

struct RejectedRecord {
    int proposal_id = 0;
    AxisBox box;
    RejectReason reason = RejectReason::no_character_support;
};

struct DetectionDocument {
    std::vector<DetectionRecord> words;
    std::vector<RejectedRecord> rejected;
};

// Full post-processing chain: threshold both maps, cluster word pixels
// around center-line seeds, verify against characters, derive geometry.
struct DetectOutputs {
    std::vector<WordProposal> proposals;
    VerifiedResult verified;
    DetectionDocument doc;
};

DetectOutputs run_detect_full(const ProbabilityMap& word_map, const ProbabilityMap& centerline_map,
                              const std::vector<CharacterBox>& chars, const PipelineConfig& cfg);

DetectionDocument run_detect(const ProbabilityMap& word_map, const ProbabilityMap& centerline_map,
                             const std::vector<CharacterBox>& chars, const PipelineConfig& cfg);

}  // namespace textcc
