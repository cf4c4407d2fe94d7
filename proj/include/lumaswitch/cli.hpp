#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "lumaswitch/mlp.hpp"
#include "lumaswitch/skinfilter.hpp"
#include "lumaswitch/switching.hpp"

namespace lumaswitch::cli {

enum ExitCode : int {
    kSuccess = 0,
    kRuntimeFailure = 1,  ///< at least one input failed
    kInvalidConfig = 2,
};

/// Raised for flag/config problems; maps to kInvalidConfig.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for unusable inputs (manifests, images, frame directories); maps
/// to kRuntimeFailure.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kFilterConfigEnv = "LUMASWITCH_FILTER_CONFIG";

struct RunConfig {
    Strategy strategy = Strategy::MaxConnected;
    SkinRangeFilter filter = SkinRangeFilter::table_defaults();
    std::optional<std::filesystem::path> model;
    int vote_threshold = 1;
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out_dir = ".";
    std::optional<std::filesystem::path> report;  ///< JSON lines; stdout when unset
    unsigned long delay_us = 0;

    /// Throws ConfigError when strategy=ann has no model or the vote
    /// threshold is outside 1..3.
    void validate() const;
};

/// Settings read from a key=value config file: filter ranges plus optional
/// strategy defaults.
struct FileConfig {
    SkinRangeFilter filter = SkinRangeFilter::table_defaults();
    std::optional<Strategy> strategy;
    std::optional<int> vote_threshold;
};

/// Throws ConfigError naming the line on unknown keys or bad values.
FileConfig parse_config(std::istream& in, std::ostream& log);
FileConfig load_config(const std::filesystem::path& path, std::ostream& log);

/// Writes <stem>.mask.pgm, <stem>.raw.pgm, <stem>.overlay.ppm per input and
/// one JSON line per input. Unreadable inputs are reported and skipped.
int cmd_segment(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Segments every *.ppm in `frame_dir` in lexicographic order; JSON lines
/// carry a "frame" index.
int cmd_stream(const RunConfig& cfg, const std::filesystem::path& frame_dir, std::ostream& out,
               std::ostream& err);

struct ManifestEntry {
    std::filesystem::path image;
    ColorSpaceId label = ColorSpaceId::RGB;
};

/// "<image path> <RGB|HSV|YCbCr>" per line; '#' comments and blank lines are
/// skipped. Relative paths resolve against the manifest's directory.
/// Throws InputError naming the offending line.
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

struct TrainOptions {
    std::filesystem::path manifest;
    std::filesystem::path model_out;
    std::optional<std::filesystem::path> loss_csv;  ///< default: <model_out>.loss.csv
    TrainConfig train;
};

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);

struct EvaluationRecord {
    std::string file;
    FeatureVector features;
    ColorSpaceId predicted = ColorSpaceId::RGB;
    ColorSpaceId truth = ColorSpaceId::RGB;
};

struct EvaluationReport {
    /// confusion[true][predicted]
    std::array<std::array<std::size_t, 3>, 3> confusion{};
    std::vector<EvaluationRecord> records;

    std::size_t total() const noexcept;
    std::size_t class_count(ColorSpaceId truth) const noexcept;
    /// Diagonal cell as a percentage of the row; nullopt for an empty row.
    std::optional<double> percent_correct(ColorSpaceId truth) const noexcept;
    double overall_accuracy() const noexcept;

    nlohmann::ordered_json to_json() const;
    void print_table(std::ostream& out) const;
};

EvaluationReport evaluate(const StoredModel& model, const std::vector<ManifestEntry>& manifest);

int cmd_eval(const std::filesystem::path& model_path, const std::filesystem::path& manifest,
             const std::optional<std::filesystem::path>& report, std::ostream& out,
             std::ostream& err);

/// Full command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lumaswitch::cli
