#include "textcc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "textcc/geometry.hpp"

namespace textcc {
namespace {

// Shortest round-trip decimal form; keeps documents byte-deterministic.
std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
    std::ostringstream msg;
    msg << path << ":" << line << ": " << what;
    throw IoError(msg.str());
}

std::ifstream open_text_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

std::ofstream open_text_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path);
}

// Reads lines, skipping blanks and '#' comments past the header. The first
// non-blank line must be the versioned header.
class LineReader {
  public:
    LineReader(std::istream& in, std::string path, const std::string& header)
        : in_(in), path_(std::move(path)) {
        std::string line;
        while (next_raw(line)) {
            if (line.empty()) continue;
            if (line == "# " + header) return;
            fail(path_, line_no_, "expected header \"# " + header + "\", got \"" + line + "\"");
        }
        fail(path_, line_no_, "missing header \"# " + header + "\"");
    }

    // Next record line, stripped; false at end of file.
    bool next(std::string& line) {
        while (next_raw(line)) {
            if (line.empty() || line[0] == '#') continue;
            return true;
        }
        return false;
    }

    const std::string& path() const { return path_; }
    int line_no() const { return line_no_; }

    [[noreturn]] void error(const std::string& what) const { fail(path_, line_no_, what); }

  private:
    bool next_raw(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++line_no_;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        line.erase(0, i);
        return true;
    }

    std::istream& in_;
    std::string path_;
    int line_no_ = 0;
};

// Whitespace tokenizer over one record line with typed extraction.
class Fields {
  public:
    Fields(const LineReader& reader, const std::string& line) : reader_(reader), in_(line) {}

    std::string word(const char* what) {
        std::string tok;
        if (!(in_ >> tok)) reader_.error(std::string("missing ") + what);
        return tok;
    }

    void keyword(const char* expect) {
        const std::string tok = word(expect);
        if (tok != expect)
            reader_.error("expected \"" + std::string(expect) + "\", got \"" + tok + "\"");
    }

    long long integer(const char* what) {
        const std::string tok = word(what);
        long long v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            reader_.error(std::string(what) + " \"" + tok + "\" is not an integer");
        return v;
    }

    double real(const char* what) {
        const std::string tok = word(what);
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            reader_.error(std::string(what) + " \"" + tok + "\" is not a number");
        }
    }

    bool peek(std::string& tok) { return static_cast<bool>(in_ >> tok); }

    void done() {
        std::string tok;
        if (in_ >> tok) reader_.error("unexpected trailing token \"" + tok + "\"");
    }

  private:
    const LineReader& reader_;
    std::istringstream in_;
};

std::string encode_runs(const std::vector<Pixel>& pixels) {
    std::string out;
    std::size_t i = 0;
    while (i < pixels.size()) {
        std::size_t j = i + 1;
        while (j < pixels.size() && pixels[j].y == pixels[i].y &&
               pixels[j].x == pixels[i].x + static_cast<int>(j - i))
            ++j;
        if (!out.empty()) out += ';';
        out += std::to_string(pixels[i].y) + ',' + std::to_string(pixels[i].x) + ',' +
               std::to_string(j - i);
        i = j;
    }
    return out;
}

std::vector<Pixel> decode_runs(const LineReader& reader, const std::string& runs) {
    std::vector<Pixel> pixels;
    std::size_t pos = 0;
    while (pos < runs.size()) {
        const auto end = runs.find(';', pos);
        const std::string run = runs.substr(pos, end == std::string::npos ? end : end - pos);
        int y = 0, x = 0, len = 0;
        char c1 = 0, c2 = 0;
        std::istringstream rs(run);
        if (!(rs >> y >> c1 >> x >> c2 >> len) || c1 != ',' || c2 != ',' || len <= 0 ||
            (rs >> c1))
            reader.error("malformed run \"" + run + "\" (want y,x,len)");
        for (int k = 0; k < len; ++k) pixels.push_back({x + k, y});
        if (end == std::string::npos) break;
        pos = end + 1;
    }
    std::sort(pixels.begin(), pixels.end());
    return pixels;
}

void write_quad_fields(std::ostream& out, const Quad& quad) {
    for (const Point2d& p : quad) out << ' ' << fmt(p.x) << ' ' << fmt(p.y);
}

Quad read_quad_fields(Fields& f) {
    Quad quad{};
    for (Point2d& p : quad) {
        p.x = f.real("quad coordinate");
        p.y = f.real("quad coordinate");
    }
    return quad;
}

}  // namespace

// ---- character boxes ------------------------------------------------------

std::vector<CharacterBox> read_char_boxes(const std::string& path) {
    auto in = open_text_in(path);
    LineReader reader(in, path, "charboxes v1");
    std::vector<CharacterBox> chars;
    std::string line;
    while (reader.next(line)) {
        Fields f(reader, line);
        CharacterBox box;
        box.x_min = static_cast<int>(f.integer("x_min"));
        box.y_min = static_cast<int>(f.integer("y_min"));
        box.x_max = static_cast<int>(f.integer("x_max"));
        box.y_max = static_cast<int>(f.integer("y_max"));
        box.class_id = static_cast<int>(f.integer("class_id"));
        box.confidence = f.real("confidence");
        f.done();
        try {
            box.validate();
        } catch (const std::invalid_argument& e) {
            reader.error(e.what());
        }
        chars.push_back(box);
    }
    return chars;
}

void write_char_boxes(const std::string& path, const std::vector<CharacterBox>& chars) {
    auto out = open_text_out(path);
    out << "# charboxes v1\n";
    for (const CharacterBox& b : chars) {
        out << b.x_min << ' ' << b.y_min << ' ' << b.x_max << ' ' << b.y_max << ' ' << b.class_id
            << ' ' << fmt(b.confidence) << '\n';
    }
    finish_write(out, path);
}

// ---- ground truth -----------------------------------------------------------

std::vector<GroundTruthWord> read_ground_truth(const std::string& path) {
    auto in = open_text_in(path);
    LineReader reader(in, path, "groundtruth v1");
    std::vector<GroundTruthWord> words;
    std::string line;
    while (reader.next(line)) {
        Fields f(reader, line);
        const std::string kind = f.word("record kind");
        GroundTruthWord word;
        if (kind == "quad") {
            word.quad = read_quad_fields(f);
        } else if (kind == "box") {
            AxisBox box;
            box.x_min = static_cast<int>(f.integer("x_min"));
            box.y_min = static_cast<int>(f.integer("y_min"));
            box.x_max = static_cast<int>(f.integer("x_max"));
            box.y_max = static_cast<int>(f.integer("y_max"));
            word.quad = quad_from_axis_box(box);
        } else {
            reader.error("unknown record kind \"" + kind + "\" (want quad or box)");
        }
        std::string tail;
        if (f.peek(tail)) {
            if (tail != "ignore") reader.error("unexpected token \"" + tail + "\"");
            word.ignore = true;
            f.done();
        }
        words.push_back(word);
    }
    return words;
}

void write_ground_truth(const std::string& path, const std::vector<GroundTruthWord>& words) {
    auto out = open_text_out(path);
    out << "# groundtruth v1\n";
    for (const GroundTruthWord& w : words) {
        out << "quad";
        write_quad_fields(out, w.quad);
        if (w.ignore) out << " ignore";
        out << '\n';
    }
    finish_write(out, path);
}

// ---- proposals --------------------------------------------------------------

std::vector<WordProposal> read_proposals(const std::string& path) {
    auto in = open_text_in(path);
    LineReader reader(in, path, "proposals v1");
    std::vector<WordProposal> proposals;
    std::string line;
    while (reader.next(line)) {
        Fields f(reader, line);
        f.keyword("proposal");
        WordProposal prop;
        prop.proposal_id = static_cast<int>(f.integer("proposal id"));
        f.keyword("seed");
        prop.seed_id = static_cast<int>(f.integer("seed id"));
        f.keyword("source");
        const std::string src = f.word("source");
        try {
            prop.source = proposal_source_from_string(src);
        } catch (const std::invalid_argument& e) {
            reader.error(e.what());
        }
        f.keyword("box");
        for (int i = 0; i < 4; ++i) f.integer("box coordinate");  // derived; recomputable
        f.keyword("quad");
        read_quad_fields(f);  // derived; recomputable
        f.keyword("rle");
        prop.pixels = decode_runs(reader, f.word("pixel runs"));
        f.done();
        proposals.push_back(std::move(prop));
    }
    return proposals;
}

void write_proposals(const std::string& path, const std::vector<WordProposal>& proposals) {
    auto out = open_text_out(path);
    out << "# proposals v1\n";
    for (const WordProposal& p : proposals) {
        if (p.pixels.empty())
            throw IoError(path + ": proposal " + std::to_string(p.proposal_id) + " has no pixels");
        const AxisBox box = axis_aligned_bbox(p.pixels);
        const RotatedRect rect = min_area_rect(p.pixels);
        out << "proposal " << p.proposal_id << " seed " << p.seed_id << " source "
            << to_string(p.source) << " box " << box.x_min << ' ' << box.y_min << ' ' << box.x_max
            << ' ' << box.y_max << " quad";
        write_quad_fields(out, rect.corners);
        out << " rle " << encode_runs(p.pixels) << '\n';
    }
    finish_write(out, path);
}

// ---- detections -------------------------------------------------------------

DetectionDocument read_detections(const std::string& path) {
    auto in = open_text_in(path);
    LineReader reader(in, path, "detections v1");
    DetectionDocument doc;
    std::string line;
    while (reader.next(line)) {
        Fields f(reader, line);
        const std::string kind = f.word("record kind");
        if (kind == "word") {
            DetectionRecord rec;
            rec.id = static_cast<int>(f.integer("word id"));
            f.keyword("box");
            rec.box.x_min = static_cast<int>(f.integer("x_min"));
            rec.box.y_min = static_cast<int>(f.integer("y_min"));
            rec.box.x_max = static_cast<int>(f.integer("x_max"));
            rec.box.y_max = static_cast<int>(f.integer("y_max"));
            f.keyword("quad");
            rec.quad.corners = read_quad_fields(f);
            f.keyword("rect");
            rec.quad.center.x = f.real("center x");
            rec.quad.center.y = f.real("center y");
            rec.quad.width = f.real("width");
            rec.quad.height = f.real("height");
            rec.quad.angle_deg = f.real("angle");
            f.keyword("chars");
            const std::string list = f.word("char list");
            if (list != "-") {
                std::istringstream ls(list);
                std::string item;
                while (std::getline(ls, item, ',')) {
                    int v = 0;
                    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
                    if (res.ec != std::errc() || res.ptr != item.data() + item.size())
                        reader.error("bad char index \"" + item + "\"");
                    rec.supporting_chars.push_back(v);
                }
            }
            f.done();
            doc.words.push_back(std::move(rec));
        } else if (kind == "rejected") {
            RejectedRecord rec;
            rec.proposal_id = static_cast<int>(f.integer("proposal id"));
            f.keyword("box");
            rec.box.x_min = static_cast<int>(f.integer("x_min"));
            rec.box.y_min = static_cast<int>(f.integer("y_min"));
            rec.box.x_max = static_cast<int>(f.integer("x_max"));
            rec.box.y_max = static_cast<int>(f.integer("y_max"));
            f.keyword("reason");
            const std::string reason = f.word("reason");
            if (reason != to_string(RejectReason::no_character_support))
                reader.error("unknown reject reason \"" + reason + "\"");
            rec.reason = RejectReason::no_character_support;
            f.done();
            doc.rejected.push_back(rec);
        } else {
            reader.error("unknown record kind \"" + kind + "\" (want word or rejected)");
        }
    }
    return doc;
}

void write_detections(std::ostream& out, const DetectionDocument& doc) {
    out << "# detections v1\n";
    for (const DetectionRecord& rec : doc.words) {
        out << "word " << rec.id << " box " << rec.box.x_min << ' ' << rec.box.y_min << ' '
            << rec.box.x_max << ' ' << rec.box.y_max << " quad";
        write_quad_fields(out, rec.quad.corners);
        out << " rect " << fmt(rec.quad.center.x) << ' ' << fmt(rec.quad.center.y) << ' '
            << fmt(rec.quad.width) << ' ' << fmt(rec.quad.height) << ' '
            << fmt(rec.quad.angle_deg) << " chars ";
        if (rec.supporting_chars.empty()) {
            out << '-';
        } else {
            for (std::size_t i = 0; i < rec.supporting_chars.size(); ++i) {
                if (i) out << ',';
                out << rec.supporting_chars[i];
            }
        }
        out << '\n';
    }
    for (const RejectedRecord& rec : doc.rejected) {
        out << "rejected " << rec.proposal_id << " box " << rec.box.x_min << ' ' << rec.box.y_min
            << ' ' << rec.box.x_max << ' ' << rec.box.y_max << " reason " << to_string(rec.reason)
            << '\n';
    }
}

void write_detections(const std::string& path, const DetectionDocument& doc) {
    auto out = open_text_out(path);
    write_detections(out, doc);
    finish_write(out, path);
}

// ---- loss report --------------------------------------------------------------

void write_loss_report(std::ostream& out, const LossReport& report) {
    out << "# lossreport v1\n";
    out << "l1 " << fmt(report.l1) << '\n';
    out << "l2 " << fmt(report.l2) << '\n';
    out << "total " << fmt(report.total) << '\n';
    out << "n_phi " << report.n_phi << '\n';
    out << "m_psi " << report.m_psi << '\n';
    out << "k_boxes " << report.k_boxes << '\n';
    for (std::size_t i = 0; i < report.per_box_ratio.size(); ++i)
        out << "ratio " << i << ' ' << fmt(report.per_box_ratio[i]) << '\n';
}

void write_loss_report(const std::string& path, const LossReport& report) {
    auto out = open_text_out(path);
    write_loss_report(out, report);
    finish_write(out, path);
}

// ---- match report --------------------------------------------------------------

void write_match_report(std::ostream& out, const MatchReport& report) {
    out << "# matchreport v1\n";
    out << "recall " << fmt(report.recall) << '\n';
    out << "precision " << fmt(report.precision) << '\n';
    out << "f_score " << fmt(report.f_score) << '\n';
    out << "gt_considered " << report.gt_considered << '\n';
    out << "det_considered " << report.det_considered << '\n';
    out << "recall_accum " << fmt(report.recall_accum) << '\n';
    out << "precision_accum " << fmt(report.precision_accum) << '\n';
    for (const MatchPair& p : report.pairs)
        out << "pair " << p.gt << ' ' << p.det << ' ' << fmt(p.score) << '\n';
    for (int i : report.unmatched_gt) out << "unmatched_gt " << i << '\n';
    for (int i : report.unmatched_det) out << "unmatched_det " << i << '\n';
}

void write_match_report(const std::string& path, const MatchReport& report) {
    auto out = open_text_out(path);
    write_match_report(out, report);
    finish_write(out, path);
}

MatchReport read_match_report(const std::string& path) {
    auto in = open_text_in(path);
    LineReader reader(in, path, "matchreport v1");
    MatchReport report;
    std::string line;
    while (reader.next(line)) {
        Fields f(reader, line);
        const std::string key = f.word("field name");
        if (key == "recall") {
            report.recall = f.real(key.c_str());
        } else if (key == "precision") {
            report.precision = f.real(key.c_str());
        } else if (key == "f_score") {
            report.f_score = f.real(key.c_str());
        } else if (key == "gt_considered") {
            report.gt_considered = f.integer(key.c_str());
        } else if (key == "det_considered") {
            report.det_considered = f.integer(key.c_str());
        } else if (key == "recall_accum") {
            report.recall_accum = f.real(key.c_str());
        } else if (key == "precision_accum") {
            report.precision_accum = f.real(key.c_str());
        } else if (key == "pair") {
            MatchPair p;
            p.gt = static_cast<int>(f.integer("gt index"));
            p.det = static_cast<int>(f.integer("det index"));
            p.score = f.real("score");
            report.pairs.push_back(p);
        } else if (key == "unmatched_gt") {
            report.unmatched_gt.push_back(static_cast<int>(f.integer(key.c_str())));
        } else if (key == "unmatched_det") {
            report.unmatched_det.push_back(static_cast<int>(f.integer(key.c_str())));
        } else {
            reader.error("unknown field \"" + key + "\"");
        }
        f.done();
    }
    return report;
}

// ---- scene specs --------------------------------------------------------------

SceneSpec read_scene_spec(const std::string& path) {
    auto in = open_text_in(path);
    LineReader reader(in, path, "scene v1");
    SceneSpec spec;
    bool have_canvas = false;
    std::string line;
    while (reader.next(line)) {
        Fields f(reader, line);
        const std::string key = f.word("record kind");
        if (key == "canvas") {
            spec.width = static_cast<int>(f.integer("width"));
            spec.height = static_cast<int>(f.integer("height"));
            have_canvas = true;
        } else if (key == "seed") {
            spec.rng_seed = static_cast<std::uint64_t>(f.integer("seed"));
        } else if (key == "noise") {
            f.keyword("flip");
            spec.noise.pixel_flip_rate = f.real("flip rate");
            f.keyword("jitter");
            spec.noise.box_jitter = f.real("jitter");
            f.keyword("conf");
            spec.noise.confidence_range.first = f.real("confidence low");
            spec.noise.confidence_range.second = f.real("confidence high");
            f.keyword("spurious");
            spec.noise.spurious_char_count = static_cast<int>(f.integer("spurious count"));
            f.keyword("drop");
            spec.noise.drop_char_rate = f.real("drop rate");
        } else if (key == "word") {
            WordSpec w;
            w.center_x = f.real("center x");
            w.center_y = f.real("center y");
            f.keyword("glyphs");
            w.glyph_count = static_cast<int>(f.integer("glyph count"));
            f.keyword("size");
            w.glyph_width = static_cast<int>(f.integer("glyph width"));
            w.glyph_height = static_cast<int>(f.integer("glyph height"));
            f.keyword("angle");
            w.angle_deg = f.real("angle");
            f.keyword("spacing");
            w.spacing = static_cast<int>(f.integer("spacing"));
            std::string tail;
            if (f.peek(tail)) {
                if (tail != "dot") reader.error("unexpected token \"" + tail + "\"");
                w.dotted = true;
            }
            spec.words.push_back(w);
        } else {
            reader.error("unknown record kind \"" + key + "\"");
        }
        f.done();
    }
    if (!have_canvas) throw IoError(path + ": scene spec has no canvas line");
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw IoError(path + ": " + e.what());
    }
    return spec;
}

void write_scene_spec(const std::string& path, const SceneSpec& spec) {
    spec.validate();
    auto out = open_text_out(path);
    out << "# scene v1\n";
    out << "canvas " << spec.width << ' ' << spec.height << '\n';
    out << "seed " << spec.rng_seed << '\n';
    out << "noise flip " << fmt(spec.noise.pixel_flip_rate) << " jitter "
        << fmt(spec.noise.box_jitter) << " conf " << fmt(spec.noise.confidence_range.first) << ' '
        << fmt(spec.noise.confidence_range.second) << " spurious " << spec.noise.spurious_char_count
        << " drop " << fmt(spec.noise.drop_char_rate) << '\n';
    for (const WordSpec& w : spec.words) {
        out << "word " << fmt(w.center_x) << ' ' << fmt(w.center_y) << " glyphs " << w.glyph_count
            << " size " << w.glyph_width << ' ' << w.glyph_height << " angle " << fmt(w.angle_deg)
            << " spacing " << w.spacing;
        if (w.dotted) out << " dot";
        out << '\n';
    }
    finish_write(out, path);
}

std::vector<std::string> write_scene_bundle(const std::string& dir, const std::string& stem,
                                            const SceneBundle& bundle) {
    std::filesystem::create_directories(dir);
    const std::string base = (std::filesystem::path(dir) / stem).string();
    std::vector<std::string> paths = {base + ".word.pgm", base + ".center.pgm",
                                      base + ".chars.txt", base + ".gt.txt"};
    write_map(paths[0], bundle.word_map);
    write_map(paths[1], bundle.centerline_map);
    write_char_boxes(paths[2], bundle.chars);
    write_ground_truth(paths[3], bundle.gt_words);
    return paths;
}

}  // namespace textcc
