#pragma once

#include <cstdint>
#include <vector>

#include "textcc/pipeline.hpp"
#include "textcc/raster.hpp"
#include "textcc/verify.hpp"

namespace textcc {

// Debug rendering: the word map as a dark backdrop, each proposal's pixels
// tinted by a palette keyed on proposal id, character boxes outlined
// (bright when confidence clears min_confidence, dim otherwise), accepted
// rotated rectangles traced in green and rejected proposal boxes in red.
// Returns an 8-bit RGB buffer of width*height*3 bytes.
std::vector<std::uint8_t> render_overlay(const ProbabilityMap& word_map,
                                         const DetectOutputs& outputs,
                                         const std::vector<CharacterBox>& chars,
                                         double min_confidence);

}  // namespace textcc
