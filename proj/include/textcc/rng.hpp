#pragma once

#include <cstdint>
#include <random>

namespace textcc {

// Seedable RNG with a fixed cross-platform contract: the raw stream is
// std::mt19937_64 (bit-exact by the C++ standard) and every derived draw
// below is defined purely in terms of that stream, never through the
// standard distribution templates, whose output is implementation defined.
class DeterministicRng {
public:
    explicit DeterministicRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_unit() { return (gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [lo, hi], inclusive. Modulo reduction; the bias is
    // far below anything observable at the span sizes used here.
    int next_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(gen_() % span);
    }

    double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    bool next_bernoulli(double p) { return next_unit() < p; }

private:
    std::mt19937_64 gen_;
};

}  // namespace textcc
