#include "textcc/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "textcc/io.hpp"

namespace textcc {

const char* to_string(EvalProtocol p) {
    return p == EvalProtocol::iou ? "iou" : "deteval";
}

EvalProtocol protocol_from_string(const std::string& s) {
    if (s == "iou") return EvalProtocol::iou;
    if (s == "deteval") return EvalProtocol::deteval;
    throw std::invalid_argument("unknown evaluation protocol \"" + s + "\"");
}

void PipelineConfig::validate() const {
    proposal.validate();
    verification.validate();
    loss.validate();
    if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
        throw std::invalid_argument("iou_threshold must lie in (0, 1]");
    }
}

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    std::ostringstream msg;
    msg << origin << ":" << line << ": " << what;
    throw IoError(msg.str());
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(origin, line, "value \"" + value + "\" for " + key + " is not a number");
    }
}

bool parse_bool(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    fail(origin, line, "value \"" + value + "\" for " + key + " is not true/false");
}

}  // namespace

PipelineConfig parse_config(std::istream& in, const std::string& origin) {
    PipelineConfig cfg;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail(origin, line_no, "expected \"key = value\", got \"" + line + "\"");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(origin, line_no, "missing key before '='");
        if (value.empty()) fail(origin, line_no, "missing value for " + key);

        if (key == "word_threshold") {
            cfg.proposal.word_threshold = parse_double(origin, line_no, key, value);
        } else if (key == "centerline_threshold") {
            cfg.proposal.centerline_threshold = parse_double(origin, line_no, key, value);
        } else if (key == "connectivity") {
            try {
                cfg.proposal.connectivity = connectivity_from_string(value);
            } catch (const std::invalid_argument& e) {
                fail(origin, line_no, e.what());
            }
        } else if (key == "orphan_attach_max_dist") {
            if (value == "unlimited") {
                cfg.proposal.orphan_attach_max_dist = std::numeric_limits<double>::infinity();
            } else {
                cfg.proposal.orphan_attach_max_dist = parse_double(origin, line_no, key, value);
            }
        } else if (key == "drop_seedless") {
            cfg.proposal.drop_seedless = parse_bool(origin, line_no, key, value);
        } else if (key == "min_confidence") {
            cfg.set_min_confidence(parse_double(origin, line_no, key, value));
        } else if (key == "support_ratio") {
            cfg.set_support_ratio(parse_double(origin, line_no, key, value));
        } else if (key == "tau") {
            cfg.loss.tau = parse_double(origin, line_no, key, value);
        } else if (key == "iou_threshold") {
            cfg.iou_threshold = parse_double(origin, line_no, key, value);
        } else if (key == "protocol") {
            try {
                cfg.protocol = protocol_from_string(value);
            } catch (const std::invalid_argument& e) {
                fail(origin, line_no, e.what());
            }
        } else {
            fail(origin, line_no, "unknown key \"" + key + "\"");
        }

        try {
            cfg.validate();
        } catch (const std::invalid_argument& e) {
            fail(origin, line_no, e.what());
        }
    }
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    return parse_config(in, path);
}

void save_config(const std::string& path, const PipelineConfig& cfg) {
    cfg.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write config file " + path);
    out.precision(17);
    out << "word_threshold = " << cfg.proposal.word_threshold << "\n";
    out << "centerline_threshold = " << cfg.proposal.centerline_threshold << "\n";
    out << "connectivity = " << to_string(cfg.proposal.connectivity) << "\n";
    if (std::isinf(cfg.proposal.orphan_attach_max_dist)) {
        out << "orphan_attach_max_dist = unlimited\n";
    } else {
        out << "orphan_attach_max_dist = " << cfg.proposal.orphan_attach_max_dist << "\n";
    }
    out << "drop_seedless = " << (cfg.proposal.drop_seedless ? "true" : "false") << "\n";
    out << "min_confidence = " << cfg.verification.min_confidence << "\n";
    out << "support_ratio = " << cfg.verification.support_ratio << "\n";
    out << "tau = " << cfg.loss.tau << "\n";
    out << "iou_threshold = " << cfg.iou_threshold << "\n";
    out << "protocol = " << to_string(cfg.protocol) << "\n";
    if (!out) throw IoError("write failed for config file " + path);
}

}  // namespace textcc
