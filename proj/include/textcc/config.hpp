#pragma once

#include <iosfwd>
#include <string>

#include "textcc/loss.hpp"
#include "textcc/proposals.hpp"
#include "textcc/verify.hpp"

namespace textcc {

enum class EvalProtocol { iou, deteval };

const char* to_string(EvalProtocol p);
EvalProtocol protocol_from_string(const std::string& s);

// Everything the pipeline needs, with documented defaults. min_confidence
// is shared between verification and the loss; support_ratio between
// verification and the loss's segment-support test.
struct PipelineConfig {
    ProposalConfig proposal;
    VerificationConfig verification;
    LossConfig loss;
    double iou_threshold = 0.5;
    EvalProtocol protocol = EvalProtocol::iou;

    void set_min_confidence(double v) {
        verification.min_confidence = v;
        loss.min_confidence = v;
    }
    void set_support_ratio(double v) { verification.support_ratio = v; }

    void validate() const;
};

// "key = value" lines, '#' comments, unknown keys and out-of-range values
// rejected with the line number. An empty file yields all defaults.
PipelineConfig load_config(const std::string& path);
PipelineConfig parse_config(std::istream& in, const std::string& origin);
void save_config(const std::string& path, const PipelineConfig& cfg);

}  // namespace textcc
