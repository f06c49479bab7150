#include "textcc/geodesic.hpp"

#include <queue>
#include <stdexcept>

namespace textcc {

int compare_distance(const GridDistance& a, const GridDistance& b) {
    const std::int64_t da = static_cast<std::int64_t>(a.axial) - b.axial;
    const std::int64_t db = static_cast<std::int64_t>(a.diag) - b.diag;
    if (da == 0 && db == 0) return 0;
    if (da >= 0 && db >= 0) return 1;
    if (da <= 0 && db <= 0) return -1;
    // Opposite signs: decide sign of da + db*sqrt(2) via squares.
    // da > 0, db < 0: positive iff da^2 > 2*db^2 (equality impossible).
    const std::int64_t lhs = da * da;
    const std::int64_t rhs = 2 * db * db;
    if (da > 0) return lhs > rhs ? 1 : -1;
    return lhs > rhs ? -1 : 1;
}

AssignmentMap::AssignmentMap(int w, int h) : width(w), height(h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("assignment map dimensions must be positive");
    assignment.assign(static_cast<size_t>(w) * h, 0);
    distance.assign(static_cast<size_t>(w) * h, std::numeric_limits<double>::infinity());
}

SeedSet extract_seeds(const BinaryMask& centerline_mask, Connectivity conn) {
    SeedSet set;
    LabelMap lm = connected_components(centerline_mask, conn);
    set.seeds.reserve(lm.component_count);
    for (int label = 1; label <= lm.component_count; ++label)
        set.seeds.push_back({label, component_pixels(lm, label)});
    return set;
}

namespace {

struct QueueEntry {
    GridDistance dist;
    std::int32_t seed_id;
    std::int32_t idx;  // row-major pixel index
};

// Min-heap order: distance, then seed id, then pixel index.
struct EntryGreater {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        int c = compare_distance(a.dist, b.dist);
        if (c != 0) return c > 0;
        if (a.seed_id != b.seed_id) return a.seed_id > b.seed_id;
        return a.idx > b.idx;
    }
};

}  // namespace

AssignmentMap geodesic_label_assignment(const BinaryMask& word_mask, const SeedSet& seeds,
                                        Connectivity conn) {
    const int w = word_mask.width;
    const int h = word_mask.height;
    AssignmentMap out(w, h);

    // Vertex set: word foreground plus seed pixels.
    std::vector<std::uint8_t> in_graph(word_mask.bits);
    for (const Seed& s : seeds.seeds) {
        if (s.pixels.empty())
            throw std::invalid_argument("seed " + std::to_string(s.id) + " has no pixels");
        for (const Pixel& p : s.pixels) {
            if (!word_mask.in_bounds(p.x, p.y))
                throw std::invalid_argument(
                    "seed pixel (" + std::to_string(p.x) + "," + std::to_string(p.y) +
                    ") outside mask of " + std::to_string(w) + "x" + std::to_string(h));
            in_graph[static_cast<size_t>(p.y) * w + p.x] = 1;
        }
    }

    std::vector<GridDistance> dist(static_cast<size_t>(w) * h);
    std::vector<std::int32_t> label(static_cast<size_t>(w) * h, 0);

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryGreater> queue;
    for (const Seed& s : seeds.seeds)
        for (const Pixel& p : s.pixels)
            queue.push({GridDistance{0, 0}, s.id, p.y * w + p.x});

    // Entries pop in (distance, seed id) lexicographic order, so the first
    // entry that lands on an unsettled vertex is final: no later entry can
    // carry a shorter distance, nor an equal distance with a smaller seed.
    while (!queue.empty()) {
        QueueEntry e = queue.top();
        queue.pop();
        if (dist[e.idx].reachable()) continue;
        dist[e.idx] = e.dist;
        label[e.idx] = e.seed_id;

        const int x = e.idx % w;
        const int y = e.idx / w;
        auto relax = [&](int nx, int ny, bool diagonal) {
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
            const size_t nidx = static_cast<size_t>(ny) * w + nx;
            if (!in_graph[nidx] || dist[nidx].reachable()) return;
            GridDistance nd = e.dist;
            if (diagonal)
                ++nd.diag;
            else
                ++nd.axial;
            queue.push({nd, e.seed_id, static_cast<std::int32_t>(nidx)});
        };

        relax(x - 1, y, false);
        relax(x + 1, y, false);
        relax(x, y - 1, false);
        relax(x, y + 1, false);
        if (conn == Connectivity::eight) {
            relax(x - 1, y - 1, true);
            relax(x + 1, y - 1, true);
            relax(x - 1, y + 1, true);
            relax(x + 1, y + 1, true);
        }
    }

    // Only word foreground pixels are reported; seed transit vertices off
    // the mask stay background.
    for (size_t i = 0; i < dist.size(); ++i) {
        if (word_mask.bits[i] && dist[i].reachable()) {
            out.assignment[i] = label[i];
            out.distance[i] = dist[i].value();
        }
    }
    return out;
}

}  // namespace textcc
