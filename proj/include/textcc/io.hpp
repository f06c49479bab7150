#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "textcc/eval.hpp"
#include "textcc/loss.hpp"
#include "textcc/pipeline.hpp"
#include "textcc/proposals.hpp"
#include "textcc/raster.hpp"
#include "textcc/synth.hpp"
#include "textcc/verify.hpp"

namespace textcc {

// File errors carry the path and, for text formats, the line number.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- images ------------------------------------------------------------
// Maps are 8-bit single-channel images, intensity k read as k/255.
// Dispatch on extension: .pgm/.pnm, .png.

ProbabilityMap read_map(const std::string& path);
void write_map(const std::string& path, const ProbabilityMap& map);
void write_mask(const std::string& path, const BinaryMask& mask);  // 0/255

ProbabilityMap read_pgm(const std::string& path);
void write_pgm(const std::string& path, const std::vector<std::uint8_t>& gray, int w, int h);

ProbabilityMap read_png_gray(const std::string& path);
void write_png_gray(const std::string& path, const std::vector<std::uint8_t>& gray, int w, int h);
void write_png_rgb(const std::string& path, const std::vector<std::uint8_t>& rgb, int w, int h);

// ---- line-oriented documents -------------------------------------------
// Every text format starts with a versioned header line, "# <kind> v1".

std::vector<CharacterBox> read_char_boxes(const std::string& path);
void write_char_boxes(const std::string& path, const std::vector<CharacterBox>& chars);

std::vector<GroundTruthWord> read_ground_truth(const std::string& path);
void write_ground_truth(const std::string& path, const std::vector<GroundTruthWord>& words);

std::vector<WordProposal> read_proposals(const std::string& path);
void write_proposals(const std::string& path, const std::vector<WordProposal>& proposals);

DetectionDocument read_detections(const std::string& path);
void write_detections(std::ostream& out, const DetectionDocument& doc);
void write_detections(const std::string& path, const DetectionDocument& doc);

void write_loss_report(std::ostream& out, const LossReport& report);
void write_loss_report(const std::string& path, const LossReport& report);

void write_match_report(std::ostream& out, const MatchReport& report);
void write_match_report(const std::string& path, const MatchReport& report);
MatchReport read_match_report(const std::string& path);

SceneSpec read_scene_spec(const std::string& path);
void write_scene_spec(const std::string& path, const SceneSpec& spec);

// Writes <stem>.word.pgm, <stem>.center.pgm, <stem>.chars.txt,
// <stem>.gt.txt into dir. Returns the paths in that order.
std::vector<std::string> write_scene_bundle(const std::string& dir, const std::string& stem,
                                            const SceneBundle& bundle);

}  // namespace textcc
