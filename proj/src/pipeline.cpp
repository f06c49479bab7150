#include "textcc/pipeline.hpp"

namespace textcc {

DetectOutputs run_detect_full(const ProbabilityMap& word_map, const ProbabilityMap& centerline_map,
                              const std::vector<CharacterBox>& chars, const PipelineConfig& cfg) {
    cfg.validate();
    DetectOutputs out;
    out.proposals = generate_proposals(word_map, centerline_map, cfg.proposal);
    out.verified = verify_proposals(out.proposals, chars, cfg.verification);

    for (std::size_t i = 0; i < out.verified.accepted.size(); ++i) {
        const WordProposal& prop = out.verified.accepted[i];
        DetectionRecord rec;
        rec.id = static_cast<int>(out.doc.words.size()) + 1;
        rec.box = axis_aligned_bbox(prop.pixels);
        rec.quad = min_area_rect(prop.pixels);
        rec.supporting_chars = out.verified.accepted_support[i];
        out.doc.words.push_back(std::move(rec));
    }
    for (const auto& [prop, reason] : out.verified.rejected) {
        RejectedRecord rec;
        rec.proposal_id = prop.proposal_id;
        rec.box = axis_aligned_bbox(prop.pixels);
        rec.reason = reason;
        out.doc.rejected.push_back(rec);
    }
    return out;
}

DetectionDocument run_detect(const ProbabilityMap& word_map, const ProbabilityMap& centerline_map,
                             const std::vector<CharacterBox>& chars, const PipelineConfig& cfg) {
    return run_detect_full(word_map, centerline_map, chars, cfg).doc;
}

}  // namespace textcc
