#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "textcc/config.hpp"
#include "textcc/io.hpp"
#include "textcc/overlay.hpp"
#include "textcc/pipeline.hpp"
#include "textcc/synth.hpp"

namespace fs = std::filesystem;
using namespace textcc;

namespace {

// Config file plus per-flag overrides shared by the pipeline subcommands.
struct ConfigCli {
    std::string config_path;
    std::optional<double> word_threshold;
    std::optional<double> centerline_threshold;
    std::optional<std::string> connectivity;
    std::optional<double> orphan_attach_max_dist;
    std::optional<bool> drop_seedless;
    std::optional<double> min_confidence;
    std::optional<double> support_ratio;
    std::optional<double> tau;
    std::optional<double> iou_threshold;
    std::optional<std::string> protocol;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (key = value lines)");
        cmd->add_option("--word-threshold", word_threshold, "word-map threshold");
        cmd->add_option("--centerline-threshold", centerline_threshold,
                        "center-line-map threshold");
        cmd->add_option("--connectivity", connectivity, "pixel connectivity")
            ->check(CLI::IsMember({"four", "eight"}));
        cmd->add_option("--orphan-attach-max-dist", orphan_attach_max_dist,
                        "max gap for attaching seedless components, in pixels");
        cmd->add_option("--drop-seedless", drop_seedless,
                        "drop word components without a seed (true/false)");
        cmd->add_option("--min-confidence", min_confidence, "character confidence cutoff");
        cmd->add_option("--support-ratio", support_ratio, "character fill-ratio cutoff");
        cmd->add_option("--tau", tau, "box fill-ratio threshold of the loss");
        cmd->add_option("--iou-threshold", iou_threshold, "IoU match threshold");
        cmd->add_option("--protocol", protocol, "evaluation protocol")
            ->check(CLI::IsMember({"iou", "deteval"}));
    }

    PipelineConfig resolve() const {
        PipelineConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (word_threshold) cfg.proposal.word_threshold = *word_threshold;
        if (centerline_threshold) cfg.proposal.centerline_threshold = *centerline_threshold;
        if (connectivity) cfg.proposal.connectivity = connectivity_from_string(*connectivity);
        if (orphan_attach_max_dist) cfg.proposal.orphan_attach_max_dist = *orphan_attach_max_dist;
        if (drop_seedless) cfg.proposal.drop_seedless = *drop_seedless;
        if (min_confidence) cfg.set_min_confidence(*min_confidence);
        if (support_ratio) cfg.set_support_ratio(*support_ratio);
        if (tau) cfg.loss.tau = *tau;
        if (iou_threshold) cfg.iou_threshold = *iou_threshold;
        if (protocol) cfg.protocol = protocol_from_string(*protocol);
        cfg.validate();
        return cfg;
    }
};

std::vector<CharacterBox> load_chars_or_empty(const std::string& path) {
    if (path.empty()) return {};
    return read_char_boxes(path);
}

DetectionDocument detect_one(const std::string& word_path, const std::string& center_path,
                             const std::string& chars_path, const PipelineConfig& cfg) {
    const ProbabilityMap word_map = read_map(word_path);
    const ProbabilityMap center_map = read_map(center_path);
    return run_detect(word_map, center_map, load_chars_or_empty(chars_path), cfg);
}

struct BatchJob {
    std::string stem;
    std::string word_path;
    std::string center_path;
    std::string chars_path;
};

// Scene bundles in dir: <stem>.word.pgm|png with matching center map and
// character file. Jobs are ordered by stem so output is reproducible.
std::vector<BatchJob> scan_batch_dir(const std::string& dir) {
    std::vector<BatchJob> jobs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        std::string ext;
        for (const char* suffix : {".word.pgm", ".word.png"}) {
            if (name.size() > std::string(suffix).size() &&
                name.ends_with(suffix)) {
                ext = std::string(suffix).substr(5);  // ".pgm" or ".png"
            }
        }
        if (ext.empty()) continue;
        BatchJob job;
        job.stem = name.substr(0, name.size() - (5 + ext.size()));
        job.word_path = entry.path().string();
        job.center_path = (fs::path(dir) / (job.stem + ".center" + ext)).string();
        job.chars_path = (fs::path(dir) / (job.stem + ".chars.txt")).string();
        if (!fs::exists(job.center_path))
            throw IoError(job.word_path + ": no matching center-line map " + job.center_path);
        if (!fs::exists(job.chars_path)) job.chars_path.clear();
        jobs.push_back(std::move(job));
    }
    std::sort(jobs.begin(), jobs.end(),
              [](const BatchJob& a, const BatchJob& b) { return a.stem < b.stem; });
    return jobs;
}

void run_detect_batch(const std::string& dir, const std::string& out_dir, int jobs_requested,
                      const PipelineConfig& cfg) {
    const std::vector<BatchJob> jobs = scan_batch_dir(dir);
    fs::create_directories(out_dir);

    std::vector<std::string> rendered(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;

    unsigned n_threads = jobs_requested > 0 ? static_cast<unsigned>(jobs_requested)
                                            : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
    n_threads = std::min<unsigned>(n_threads, std::max<std::size_t>(jobs.size(), 1));

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                const DetectionDocument doc =
                    detect_one(jobs[i].word_path, jobs[i].center_path, jobs[i].chars_path, cfg);
                std::ostringstream out;
                write_detections(out, doc);
                rendered[i] = out.str();
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);

    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const std::string out_path = (fs::path(out_dir) / (jobs[i].stem + ".det.txt")).string();
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw IoError("cannot write " + out_path);
        out << rendered[i];
        out.flush();
        if (!out) throw IoError("write failed for " + out_path);
        std::cout << out_path << "\n";
    }
}

void emit_or_print(const std::string& out_path, const std::string& body) {
    if (out_path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw IoError("cannot write " + out_path);
    out << body;
    out.flush();
    if (!out) throw IoError("write failed for " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scene-text post-processing: proposals, verification, loss, evaluation"};
    app.require_subcommand(1);

    // ---- detect ----
    auto* detect = app.add_subcommand(
        "detect", "maps + characters -> verified word detections");
    struct {
        std::string word, center, chars, out, dir, out_dir;
        int jobs = 0;
        ConfigCli config;
    } det;
    detect->add_option("--word", det.word, "word probability map");
    detect->add_option("--center", det.center, "center-line probability map");
    detect->add_option("--chars", det.chars, "character boxes file");
    detect->add_option("--out", det.out, "output detections file (default: stdout)");
    detect->add_option("--dir", det.dir, "batch mode: directory of scene bundles");
    detect->add_option("--out-dir", det.out_dir, "batch mode: output directory (default: --dir)");
    detect->add_option("--jobs", det.jobs, "batch mode: worker threads (default: hardware)");
    det.config.attach(detect);
    detect->callback([&] {
        const PipelineConfig cfg = det.config.resolve();
        if (!det.dir.empty()) {
            run_detect_batch(det.dir, det.out_dir.empty() ? det.dir : det.out_dir, det.jobs, cfg);
            return;
        }
        if (det.word.empty() || det.center.empty())
            throw CLI::ValidationError("detect", "--word and --center are required (or --dir)");
        const DetectionDocument doc = detect_one(det.word, det.center, det.chars, cfg);
        std::ostringstream body;
        write_detections(body, doc);
        emit_or_print(det.out, body.str());
    });

    // ---- loss ----
    auto* loss = app.add_subcommand(
        "loss", "word mask + segments + characters -> consistency loss report");
    struct {
        std::string word, center, segments, chars, out;
        ConfigCli config;
    } lo;
    loss->add_option("--word", lo.word, "word probability map")->required();
    loss->add_option("--center", lo.center, "center-line map (derive segments from maps)");
    loss->add_option("--segments", lo.segments, "proposals file (use stored segments)");
    loss->add_option("--chars", lo.chars, "character boxes file");
    loss->add_option("--out", lo.out, "output report file (default: stdout)");
    lo.config.attach(loss);
    loss->callback([&] {
        const PipelineConfig cfg = lo.config.resolve();
        const ProbabilityMap word_map = read_map(lo.word);
        std::vector<WordProposal> segments;
        if (!lo.segments.empty()) {
            segments = read_proposals(lo.segments);
        } else if (!lo.center.empty()) {
            segments = generate_proposals(word_map, read_map(lo.center), cfg.proposal);
        } else {
            throw CLI::ValidationError("loss", "need --segments or --center");
        }
        const BinaryMask mask = threshold_map(word_map, cfg.proposal.word_threshold);
        const LossReport report = compute_consistency_loss(
            mask, segments, load_chars_or_empty(lo.chars), cfg.loss,
            cfg.verification.support_ratio);
        std::ostringstream body;
        write_loss_report(body, report);
        emit_or_print(lo.out, body.str());
    });

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "ground truth + detections -> match report");
    struct {
        std::string gt, det, out;
        ConfigCli config;
    } ev;
    eval->add_option("--gt", ev.gt, "ground-truth words file")->required();
    eval->add_option("--det", ev.det, "detections file")->required();
    eval->add_option("--out", ev.out, "output report file (default: stdout)");
    ev.config.attach(eval);
    eval->callback([&] {
        const PipelineConfig cfg = ev.config.resolve();
        const std::vector<GroundTruthWord> gt = read_ground_truth(ev.gt);
        const DetectionDocument doc = read_detections(ev.det);
        std::vector<Quad> det_quads;
        det_quads.reserve(doc.words.size());
        for (const DetectionRecord& rec : doc.words) det_quads.push_back(rec.quad.corners);
        const MatchReport report = cfg.protocol == EvalProtocol::iou
                                       ? match_one_to_one(gt, det_quads, cfg.iou_threshold)
                                       : match_deteval(gt, det_quads);
        std::ostringstream body;
        write_match_report(body, report);
        emit_or_print(ev.out, body.str());
    });

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "scene spec -> rendered bundle on disk");
    struct {
        std::string spec, out_dir, stem = "scene";
        std::optional<std::uint64_t> seed;
    } sy;
    synth->add_option("--spec", sy.spec, "scene spec file")->required();
    synth->add_option("--out-dir", sy.out_dir, "output directory")->required();
    synth->add_option("--stem", sy.stem, "output filename stem (default: scene)");
    synth->add_option("--seed", sy.seed, "override the spec's RNG seed");
    synth->callback([&] {
        SceneSpec spec = read_scene_spec(sy.spec);
        if (sy.seed) spec.rng_seed = *sy.seed;
        SceneBundle bundle = render_scene(spec);
        // Noise draws come from a stream derived from the scene seed so the
        // clean render and its noisy variant stay independently reproducible.
        if (!spec.noise.is_zero()) bundle = apply_noise(bundle, spec.noise, spec.rng_seed + 1);
        for (const std::string& path : write_scene_bundle(sy.out_dir, sy.stem, bundle))
            std::cout << path << "\n";
    });

    // ---- overlay ----
    auto* overlay = app.add_subcommand(
        "overlay", "render mask, proposals, characters and detections to a PNG");
    struct {
        std::string word, center, chars, out;
        ConfigCli config;
    } ov;
    overlay->add_option("--word", ov.word, "word probability map")->required();
    overlay->add_option("--center", ov.center, "center-line probability map")->required();
    overlay->add_option("--chars", ov.chars, "character boxes file");
    overlay->add_option("--out", ov.out, "output PNG path")->required();
    ov.config.attach(overlay);
    overlay->callback([&] {
        const PipelineConfig cfg = ov.config.resolve();
        const ProbabilityMap word_map = read_map(ov.word);
        const ProbabilityMap center_map = read_map(ov.center);
        const std::vector<CharacterBox> chars = load_chars_or_empty(ov.chars);
        const DetectOutputs outputs = run_detect_full(word_map, center_map, chars, cfg);
        const std::vector<std::uint8_t> rgb =
            render_overlay(word_map, outputs, chars, cfg.verification.min_confidence);
        write_png_rgb(ov.out, rgb, word_map.width, word_map.height);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
