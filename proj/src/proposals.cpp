#include "textcc/proposals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace textcc {

const char* to_string(ProposalSource s) {
    return s == ProposalSource::geodesic ? "geodesic" : "orphan_attached";
}

ProposalSource proposal_source_from_string(const std::string& s) {
    if (s == "geodesic") return ProposalSource::geodesic;
    if (s == "orphan_attached") return ProposalSource::orphan_attached;
    throw std::invalid_argument("unknown proposal source '" + s + "'");
}

void ProposalConfig::validate() const {
    if (word_threshold < 0.0 || word_threshold > 1.0)
        throw std::invalid_argument("word_threshold outside [0,1]");
    if (centerline_threshold < 0.0 || centerline_threshold > 1.0)
        throw std::invalid_argument("centerline_threshold outside [0,1]");
    if (!(orphan_attach_max_dist >= 0.0))
        throw std::invalid_argument("orphan_attach_max_dist must be >= 0");
}

namespace {

double min_gap_squared(const std::vector<Pixel>& a, const std::vector<Pixel>& b) {
    double best = std::numeric_limits<double>::infinity();
    for (const Pixel& p : a) {
        for (const Pixel& q : b) {
            const double dx = p.x - q.x;
            const double dy = p.y - q.y;
            best = std::min(best, dx * dx + dy * dy);
        }
    }
    return best;
}

}  // namespace

std::vector<WordProposal> generate_proposals(const ProbabilityMap& word_map,
                                             const ProbabilityMap& centerline_map,
                                             const ProposalConfig& cfg) {
    cfg.validate();
    if (word_map.width != centerline_map.width || word_map.height != centerline_map.height)
        throw std::invalid_argument(
            "word map is " + std::to_string(word_map.width) + "x" +
            std::to_string(word_map.height) + " but centerline map is " +
            std::to_string(centerline_map.width) + "x" + std::to_string(centerline_map.height));

    const BinaryMask word_mask = threshold_map(word_map, cfg.word_threshold);
    const BinaryMask center_mask = threshold_map(centerline_map, cfg.centerline_threshold);

    const SeedSet seeds = extract_seeds(center_mask, cfg.connectivity);
    const AssignmentMap assign = geodesic_label_assignment(word_mask, seeds, cfg.connectivity);

    // Group assigned pixels by seed, row-major within each group.
    std::vector<std::vector<Pixel>> by_seed(seeds.size() + 1);
    for (int y = 0; y < assign.height; ++y)
        for (int x = 0; x < assign.width; ++x)
            if (int s = assign.at(x, y); s > 0) by_seed[s].push_back({x, y});

    std::vector<WordProposal> proposals;
    std::vector<int> seed_to_proposal(seeds.size() + 1, -1);
    for (size_t s = 1; s < by_seed.size(); ++s) {
        if (by_seed[s].empty()) continue;
        seed_to_proposal[s] = static_cast<int>(proposals.size());
        proposals.push_back({static_cast<int>(proposals.size()) + 1, static_cast<int>(s),
                             ProposalSource::geodesic, std::move(by_seed[s])});
    }

    // Orphans: word components with no assigned pixel (detached strokes,
    // dots of i/j). Attachment looks at the gap to each proposal's assigned
    // pixels, so attached orphans never pull in further orphans.
    if (!cfg.drop_seedless && !proposals.empty()) {
        const LabelMap word_cc = connected_components(word_mask, cfg.connectivity);
        std::vector<std::uint8_t> has_assignment(word_cc.component_count + 1, 0);
        for (size_t i = 0; i < assign.assignment.size(); ++i)
            if (assign.assignment[i] > 0) has_assignment[word_cc.labels[i]] = 1;

        const double max_gap_sq =
            cfg.orphan_attach_max_dist * cfg.orphan_attach_max_dist;
        std::vector<std::vector<Pixel>> attach_to(proposals.size());
        for (int label = 1; label <= word_cc.component_count; ++label) {
            if (has_assignment[label]) continue;
            const std::vector<Pixel> orphan = component_pixels(word_cc, label);

            int best = -1;
            double best_gap_sq = std::numeric_limits<double>::infinity();
            for (size_t p = 0; p < proposals.size(); ++p) {
                const double gap_sq = min_gap_squared(orphan, proposals[p].pixels);
                if (gap_sq < best_gap_sq) {
                    best_gap_sq = gap_sq;
                    best = static_cast<int>(p);
                }
                // equal gaps keep the earlier proposal, i.e. the smaller seed id
            }
            if (best >= 0 && best_gap_sq <= max_gap_sq)
                attach_to[best].insert(attach_to[best].end(), orphan.begin(), orphan.end());
        }
        for (size_t p = 0; p < proposals.size(); ++p) {
            if (attach_to[p].empty()) continue;
            proposals[p].pixels.insert(proposals[p].pixels.end(), attach_to[p].begin(),
                                       attach_to[p].end());
            std::sort(proposals[p].pixels.begin(), proposals[p].pixels.end());
            proposals[p].source = ProposalSource::orphan_attached;
        }
    }

    return proposals;
}

}  // namespace textcc
