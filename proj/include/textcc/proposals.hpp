#pragma once

#include <string>
#include <vector>

#include "textcc/geodesic.hpp"
#include "textcc/raster.hpp"

namespace textcc {

enum class ProposalSource { geodesic, orphan_attached };

const char* to_string(ProposalSource s);
ProposalSource proposal_source_from_string(const std::string& s);

// A word-instance hypothesis: the word-mask pixels grouped around one
// center-line seed. Pixels are kept sorted row-major.
struct WordProposal {
    int proposal_id = 0;
    int seed_id = 0;
    ProposalSource source = ProposalSource::geodesic;
    std::vector<Pixel> pixels;
};

struct ProposalConfig {
    Connectivity connectivity = Connectivity::eight;
    double word_threshold = 0.5;
    double centerline_threshold = 0.5;
    // Max Euclidean gap (pixel centers) for attaching a seedless word
    // component to the nearest proposal; +inf means unlimited.
    double orphan_attach_max_dist = 20.0;
    bool drop_seedless = false;

    void validate() const;
};

// Threshold both maps, extract seeds from the center-line mask, run the
// geodesic assignment on the word mask, and group assigned pixels by seed.
// Word components that received no assignment are orphans: unless
// drop_seedless is set they attach to the proposal whose assigned pixels
// are nearest (Euclidean, ties to the smaller seed id), provided the gap
// stays within orphan_attach_max_dist; otherwise they are dropped.
std::vector<WordProposal> generate_proposals(const ProbabilityMap& word_map,
                                             const ProbabilityMap& centerline_map,
                                             const ProposalConfig& cfg);

}  // namespace textcc
