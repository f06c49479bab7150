#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "textcc/raster.hpp"

namespace textcc {

// One cluster center: the pixels of one center-line connected component.
struct Seed {
    int id = 0;  // 1-based, contiguous
    std::vector<Pixel> pixels;
};

struct SeedSet {
    std::vector<Seed> seeds;

    bool empty() const { return seeds.empty(); }
    size_t size() const { return seeds.size(); }
};

// Grid path length a + b*sqrt(2), kept as integer step counts so that
// distance comparisons and the seed tie rule are exact. Two path lengths
// are equal only when their step counts agree; sqrt(2) being irrational,
// distinct (axial, diag) pairs never collide.
struct GridDistance {
    std::int32_t axial = -1;  // axial < 0 means unreachable
    std::int32_t diag = 0;

    bool reachable() const { return axial >= 0; }
    double value() const {
        return reachable() ? axial + diag * 1.4142135623730951 /* sqrt(2) */
                           : std::numeric_limits<double>::infinity();
    }
};

// Exact three-way comparison of two reachable distances: -1, 0, or +1.
int compare_distance(const GridDistance& a, const GridDistance& b);

// Result of the multi-source geodesic pass. assignment is 0 on background
// and on unreached foreground; distance is +inf wherever assignment is 0.
struct AssignmentMap {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> assignment;
    std::vector<double> distance;

    AssignmentMap() = default;
    AssignmentMap(int w, int h);

    int at(int x, int y) const { return assignment[static_cast<size_t>(y) * width + x]; }
    double dist(int x, int y) const { return distance[static_cast<size_t>(y) * width + x]; }
};

// One seed per center-line connected component, ids in row-major
// first-encounter order. Empty mask gives an empty set.
SeedSet extract_seeds(const BinaryMask& centerline_mask, Connectivity conn);

// Multi-source shortest path over the grid graph whose vertices are the
// word-mask foreground pixels plus all seed pixels. Steps cost 1 between
// axis neighbors and sqrt(2) between diagonal neighbors (eight-connectivity
// only); paths never leave the vertex set. Each reachable foreground pixel
// takes the id of its geodesically nearest seed, ties going to the smaller
// seed id. Seed pixels off the word mask act as transit vertices only and
// stay unassigned in the output.
AssignmentMap geodesic_label_assignment(const BinaryMask& word_mask, const SeedSet& seeds,
                                        Connectivity conn);

}  // namespace textcc
