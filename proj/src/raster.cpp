#include "textcc/raster.hpp"

#include <numeric>
#include <stdexcept>

namespace textcc {

const char* to_string(Connectivity c) {
    return c == Connectivity::four ? "four" : "eight";
}

Connectivity connectivity_from_string(const std::string& s) {
    if (s == "four" || s == "4") return Connectivity::four;
    if (s == "eight" || s == "8") return Connectivity::eight;
    throw std::invalid_argument("unknown connectivity '" + s + "' (expected four or eight)");
}

ProbabilityMap::ProbabilityMap(int w, int h, double fill) : width(w), height(h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("probability map dimensions must be positive");
    if (fill < 0.0 || fill > 1.0)
        throw std::invalid_argument("probability map fill value outside [0,1]");
    values.assign(static_cast<size_t>(w) * h, fill);
}

void ProbabilityMap::validate() const {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("probability map dimensions must be positive");
    if (values.size() != static_cast<size_t>(width) * height)
        throw std::invalid_argument("probability map value count does not match dimensions");
    for (double v : values)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("probability map value outside [0,1]");
}

BinaryMask::BinaryMask(int w, int h, bool fill) : width(w), height(h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("mask dimensions must be positive");
    bits.assign(static_cast<size_t>(w) * h, fill ? 1 : 0);
}

size_t BinaryMask::foreground_count() const {
    size_t n = 0;
    for (std::uint8_t b : bits) n += b != 0;
    return n;
}

std::vector<Pixel> BinaryMask::foreground_pixels() const {
    std::vector<Pixel> out;
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (at(x, y)) out.push_back({x, y});
    return out;
}

LabelMap::LabelMap(int w, int h) : width(w), height(h) {
    if (w <= 0 || h <= 0)
        throw std::invalid_argument("label map dimensions must be positive");
    labels.assign(static_cast<size_t>(w) * h, 0);
}

BinaryMask threshold_map(const ProbabilityMap& map, double t) {
    if (t < 0.0 || t > 1.0)
        throw std::invalid_argument("threshold outside [0,1]");
    BinaryMask mask(map.width, map.height);
    for (size_t i = 0; i < map.values.size(); ++i)
        mask.bits[i] = map.values[i] >= t ? 1 : 0;
    return mask;
}

namespace {

// Union-find over provisional labels, path compression on find.
struct UnionFind {
    std::vector<int> parent;

    int make() {
        parent.push_back(static_cast<int>(parent.size()));
        return static_cast<int>(parent.size()) - 1;
    }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        // keep the smaller provisional label as root so first-encounter
        // renumbering stays stable
        if (a < b)
            parent[b] = a;
        else
            parent[a] = b;
    }
};

}  // namespace

LabelMap connected_components(const BinaryMask& mask, Connectivity conn) {
    LabelMap lm(mask.width, mask.height);
    const int w = mask.width;
    const int h = mask.height;

    UnionFind uf;
    std::vector<int> provisional(static_cast<size_t>(w) * h, -1);

    // First pass: scan row-major, connect to already-visited neighbors
    // (left, up, and for eight-connectivity the two upper diagonals).
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            const size_t idx = static_cast<size_t>(y) * w + x;

            int neighbor_label = -1;
            auto consider = [&](int nx, int ny) {
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) return;
                if (!mask.at(nx, ny)) return;
                int nl = provisional[static_cast<size_t>(ny) * w + nx];
                if (nl < 0) return;
                if (neighbor_label < 0)
                    neighbor_label = nl;
                else
                    uf.merge(neighbor_label, nl);
            };

            consider(x - 1, y);
            consider(x, y - 1);
            if (conn == Connectivity::eight) {
                consider(x - 1, y - 1);
                consider(x + 1, y - 1);
            }

            provisional[idx] = neighbor_label >= 0 ? neighbor_label : uf.make();
        }
    }

    // Second pass: renumber roots by row-major first encounter.
    std::vector<int> root_to_final(uf.parent.size(), 0);
    int next_label = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const size_t idx = static_cast<size_t>(y) * w + x;
            if (provisional[idx] < 0) continue;
            int root = uf.find(provisional[idx]);
            if (root_to_final[root] == 0) root_to_final[root] = ++next_label;
            lm.labels[idx] = root_to_final[root];
        }
    }
    lm.component_count = next_label;
    return lm;
}

std::vector<Pixel> component_pixels(const LabelMap& lm, int label) {
    if (label < 1 || label > lm.component_count)
        throw std::out_of_range("component label " + std::to_string(label) +
                                " outside 1.." + std::to_string(lm.component_count));
    std::vector<Pixel> out;
    for (int y = 0; y < lm.height; ++y)
        for (int x = 0; x < lm.width; ++x)
            if (lm.at(x, y) == label) out.push_back({x, y});
    return out;
}

}  // namespace textcc
