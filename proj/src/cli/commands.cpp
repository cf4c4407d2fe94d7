#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "lumaswitch/cli.hpp"
#include "lumaswitch/colorspace.hpp"

namespace lumaswitch::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

void RunConfig::validate() const {
    if (strategy == Strategy::ANN && !model) {
        throw ConfigError("strategy 'ann' requires --model");
    }
    if (vote_threshold < 1 || vote_threshold > 3) {
        throw ConfigError("--vote-threshold must be 1, 2 or 3");
    }
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Sends JSON lines to a report file when one is configured, else to `out`.
class ReportWriter {
public:
    ReportWriter(const std::optional<fs::path>& path, std::ostream& fallback) : sink_(&fallback) {
        if (path) {
            file_.open(*path, std::ios::trunc);
            if (!file_) throw ConfigError("cannot open report " + path->string());
            sink_ = &file_;
        }
    }

    void line(const ordered_json& doc) { *sink_ << doc.dump() << '\n' << std::flush; }

private:
    std::ofstream file_;
    std::ostream* sink_;
};

ordered_json sizes_json(const SpaceSizes& sizes) {
    ordered_json doc = ordered_json::object();
    for (ColorSpaceId s : kAllSpaces) {
        if (sizes[index_of(s)]) doc[std::string(to_string(s))] = *sizes[index_of(s)];
    }
    return doc;
}

SegmentationResult segment_image(const ImageBuffer& image, const RunConfig& cfg,
                                 const std::optional<StoredModel>& model) {
    switch (cfg.strategy) {
        case Strategy::ANN: return algorithm1_ann_switch(image, *model, cfg.filter);
        case Strategy::MaxConnected: return algorithm2_max_connected(image, cfg.filter);
        case Strategy::SigmaConnect:
            return algorithm3_sigma_connect(image, cfg.filter, cfg.vote_threshold);
    }
    throw std::logic_error("unknown strategy");
}

struct Pipeline {
    const RunConfig& cfg;
    std::optional<StoredModel> model;
    ReportWriter report;

    Pipeline(const RunConfig& c, std::ostream& out)
        : cfg((c.validate(), c)), report(c.report, out) {
        if (cfg.strategy == Strategy::ANN) {
            try {
                model = load_model(*cfg.model);
            } catch (const std::exception& e) {
                throw ConfigError(e.what());
            }
        }
        std::error_code ec;
        fs::create_directories(cfg.out_dir, ec);
        if (ec || !fs::is_directory(cfg.out_dir)) {
            throw ConfigError("cannot create output directory " + cfg.out_dir.string());
        }
    }

    // Returns false when the input could not be processed.
    bool process(const fs::path& input, std::optional<std::size_t> frame, std::ostream& err) {
        try {
            const ImageBuffer image = load_image(input);
            const SegmentationResult r = segment_image(image, cfg, model);
            const std::string stem = input.stem().string();
            save_mask(r.mask, cfg.out_dir / (stem + ".mask.pgm"));
            save_mask(r.raw_mask, cfg.out_dir / (stem + ".raw.pgm"));
            save_image(r.overlay, cfg.out_dir / (stem + ".overlay.ppm"));

            ordered_json line;
            if (frame) line["frame"] = *frame;
            line["file"] = input.string();
            line["strategy"] = to_string(r.strategy);
            line["chosen"] = r.chosen_name();
            line["blob_size"] = r.blob_size;
            line["per_space_sizes"] = sizes_json(r.per_space_sizes);
            line["filter"] = to_json(cfg.filter);
            report.line(line);
            return true;
        } catch (const ImageError& e) {
            err << "error: " << e.what() << '\n';
            return false;
        }
    }
};

}  // namespace

FileConfig parse_config(std::istream& in, std::ostream& log) {
    FileConfig cfg;
    FilterConfigBuilder filter;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = line;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) {
            text = text.substr(0, hash);
        }
        text = trim(text);
        if (text.empty()) continue;
        const auto where = "config line " + std::to_string(line_no) + ": ";
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));

        if (key == "strategy") {
            cfg.strategy = parse_strategy(value);
            if (!cfg.strategy) throw ConfigError(where + "unknown strategy '" + std::string(value) + "'");
        } else if (key == "vote_threshold") {
            if (value != "1" && value != "2" && value != "3") {
                throw ConfigError(where + "vote_threshold must be 1, 2 or 3");
            }
            cfg.vote_threshold = value[0] - '0';
        } else {
            try {
                if (!filter.apply(key, value)) {
                    throw ConfigError(where + "unknown key '" + std::string(key) + "'");
                }
            } catch (const std::invalid_argument& e) {
                throw ConfigError(where + e.what());
            }
        }
    }
    cfg.filter = filter.finish(log);
    return cfg;
}

FileConfig load_config(const fs::path& path, std::ostream& log) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    return parse_config(in, log);
}

int cmd_segment(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.inputs.empty()) throw ConfigError("segment: no input images");
    Pipeline pipeline(cfg, out);
    int status = kSuccess;
    for (const auto& input : cfg.inputs) {
        if (!pipeline.process(input, std::nullopt, err)) status = kRuntimeFailure;
    }
    return status;
}

int cmd_stream(const RunConfig& cfg, const fs::path& frame_dir, std::ostream& out,
               std::ostream& err) {
    std::error_code ec;
    if (!fs::is_directory(frame_dir, ec)) {
        throw InputError("stream: " + frame_dir.string() + " is not a directory");
    }
    std::vector<fs::path> frames;
    for (const auto& entry : fs::directory_iterator(frame_dir)) {
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (entry.is_regular_file() && ext == ".ppm") frames.push_back(entry.path());
    }
    if (frames.empty()) throw InputError("stream: no .ppm frames in " + frame_dir.string());
    std::sort(frames.begin(), frames.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });

    Pipeline pipeline(cfg, out);
    int status = kSuccess;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (i > 0 && cfg.delay_us > 0) {
            std::this_thread::sleep_for(std::chrono::microseconds(cfg.delay_us));
        }
        if (!pipeline.process(frames[i], i, err)) status = kRuntimeFailure;
    }
    return status;
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read manifest " + path.string());
    const fs::path base = path.parent_path();

    std::vector<ManifestEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto where = path.string() + ":" + std::to_string(line_no) + ": ";
        const auto split = text.find_last_of(" \t");
        if (split == std::string_view::npos) {
            throw InputError(where + "expected '<image path> <RGB|HSV|YCbCr>'");
        }
        const auto label_text = text.substr(split + 1);
        const auto label = parse_color_space(label_text);
        if (!label) {
            throw InputError(where + "unknown label '" + std::string(label_text) + "'");
        }
        fs::path image(std::string(trim(text.substr(0, split))));
        if (image.is_relative()) image = base / image;
        entries.push_back({image, *label});
    }
    if (entries.empty()) throw InputError("manifest " + path.string() + " has no entries");
    return entries;
}

namespace {

std::vector<FeatureVector> manifest_features(const std::vector<ManifestEntry>& manifest) {
    std::vector<FeatureVector> features;
    features.reserve(manifest.size());
    for (const auto& entry : manifest) {
        try {
            features.push_back(feature_vector(load_image(entry.image)));
        } catch (const ImageError& e) {
            throw InputError(e.what());
        }
    }
    return features;
}

std::string percent(double fraction) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << fraction * 100.0 << '%';
    return os.str();
}

}  // namespace

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
    (void)err;
    const auto manifest = read_manifest(opts.manifest);
    const auto features = manifest_features(manifest);

    TrainConfig cfg = opts.train;
    cfg.normalization = Normalization::fit(features);

    std::vector<TrainingExample> data;
    data.reserve(manifest.size());
    for (std::size_t i = 0; i < manifest.size(); ++i) data.push_back({features[i], manifest[i].label});

    const TrainResult result = train(data, cfg);
    save_model(result.model, cfg.normalization, opts.model_out);
    fs::path loss_path = opts.loss_csv.value_or(fs::path(opts.model_out).replace_extension(".loss.csv"));
    write_loss_trace(result.loss_trace, loss_path);

    const double accuracy = training_accuracy(result.model, data, cfg.normalization);
    const auto correct = static_cast<std::size_t>(std::lround(accuracy * static_cast<double>(data.size())));
    out << "examples: " << data.size() << '\n'
        << "loss: " << result.loss_trace.front() << " -> " << result.loss_trace.back() << '\n'
        << "training accuracy: " << percent(accuracy) << " (" << correct << '/' << data.size()
        << ")\n"
        << "model: " << opts.model_out.string() << '\n'
        << "loss trace: " << loss_path.string() << '\n';
    return kSuccess;
}

std::size_t EvaluationReport::total() const noexcept {
    std::size_t n = 0;
    for (const auto& row : confusion) {
        for (std::size_t c : row) n += c;
    }
    return n;
}

std::size_t EvaluationReport::class_count(ColorSpaceId truth) const noexcept {
    const auto& row = confusion[index_of(truth)];
    return row[0] + row[1] + row[2];
}

std::optional<double> EvaluationReport::percent_correct(ColorSpaceId truth) const noexcept {
    const std::size_t n = class_count(truth);
    if (n == 0) return std::nullopt;
    return 100.0 * static_cast<double>(confusion[index_of(truth)][index_of(truth)]) /
           static_cast<double>(n);
}

double EvaluationReport::overall_accuracy() const noexcept {
    const std::size_t n = total();
    if (n == 0) return 0.0;
    return static_cast<double>(confusion[0][0] + confusion[1][1] + confusion[2][2]) /
           static_cast<double>(n);
}

ordered_json EvaluationReport::to_json() const {
    ordered_json doc;
    doc["labels"] = {"RGB", "HSV", "YCbCr"};
    doc["confusion"] = confusion;
    ordered_json pct = ordered_json::array();
    for (ColorSpaceId s : kAllSpaces) {
        const auto p = percent_correct(s);
        pct.push_back(p ? ordered_json(*p) : ordered_json(nullptr));
    }
    doc["percent_correct"] = pct;
    doc["overall_accuracy"] = overall_accuracy();
    doc["total"] = total();
    ordered_json recs = ordered_json::array();
    for (const auto& r : records) {
        recs.push_back({{"file", r.file},
                        {"features", lumaswitch::to_json(r.features)},
                        {"predicted", to_string(r.predicted)},
                        {"true", to_string(r.truth)}});
    }
    doc["records"] = recs;
    return doc;
}

void EvaluationReport::print_table(std::ostream& out) const {
    constexpr int kCol = 10;
    out << std::left << std::setw(16) << "true\\predicted" << std::right;
    for (ColorSpaceId s : kAllSpaces) out << std::setw(kCol) << to_string(s);
    out << std::setw(kCol) << "correct" << '\n';
    for (ColorSpaceId t : kAllSpaces) {
        out << std::left << std::setw(16) << to_string(t) << std::right;
        for (std::size_t c : confusion[index_of(t)]) out << std::setw(kCol) << c;
        const auto p = percent_correct(t);
        out << std::setw(kCol) << (p ? percent(*p / 100.0) : std::string("-")) << '\n';
    }
    const std::size_t correct = confusion[0][0] + confusion[1][1] + confusion[2][2];
    out << "overall accuracy: " << percent(overall_accuracy()) << " (" << correct << '/'
        << total() << ")\n";
}

EvaluationReport evaluate(const StoredModel& model, const std::vector<ManifestEntry>& manifest) {
    const auto features = manifest_features(manifest);
    EvaluationReport report;
    for (std::size_t i = 0; i < manifest.size(); ++i) {
        const ColorSpaceId predicted = predict_space(model.model, features[i], model.normalization);
        ++report.confusion[index_of(manifest[i].label)][index_of(predicted)];
        report.records.push_back({manifest[i].image.string(), features[i], predicted, manifest[i].label});
    }
    return report;
}

int cmd_eval(const fs::path& model_path, const fs::path& manifest,
             const std::optional<fs::path>& report_path, std::ostream& out, std::ostream& err) {
    (void)err;
    StoredModel model;
    try {
        model = load_model(model_path);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    const EvaluationReport report = evaluate(model, read_manifest(manifest));
    report.print_table(out);
    if (report_path) {
        std::ofstream file(*report_path, std::ios::trunc);
        if (!file) throw ConfigError("cannot open report " + report_path->string());
        file << report.to_json().dump(2) << '\n';
    } else {
        out << report.to_json().dump() << '\n';
    }
    return kSuccess;
}

}  // namespace lumaswitch::cli
