#include <algorithm>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "lumaswitch/cli.hpp"

namespace lumaswitch::cli {

namespace fs = std::filesystem;

namespace {

struct SegmentFlags {
    std::string strategy;
    std::string model;
    std::string filter_config;
    int vote_threshold = 1;
    std::string out_dir = ".";
    std::string report;
    unsigned long delay_us = 0;

    CLI::Option* strategy_opt = nullptr;
    CLI::Option* vote_opt = nullptr;
};

void add_segment_flags(CLI::App& cmd, SegmentFlags& f, bool with_delay) {
    f.strategy_opt = cmd.add_option("--strategy", f.strategy,
                                    "ann | maxconnected | sigmaconnect (default maxconnected)");
    cmd.add_option("--model", f.model, "model JSON (required for --strategy ann)");
    cmd.add_option("--filter-config", f.filter_config,
                   std::string("key=value filter config (fallback: $") + kFilterConfigEnv + ")");
    f.vote_opt = cmd.add_option("--vote-threshold", f.vote_threshold,
                                "sigmaconnect votes needed per pixel (1-3)");
    cmd.add_option("--out-dir", f.out_dir, "directory for masks and overlays");
    cmd.add_option("--report", f.report, "JSON-lines report path (default: stdout)");
    if (with_delay) cmd.add_option("--delay-us", f.delay_us, "pause between frames in microseconds");
}

RunConfig build_run_config(const SegmentFlags& f, std::ostream& err) {
    RunConfig cfg;
    std::optional<fs::path> config_path;
    if (!f.filter_config.empty()) {
        config_path = f.filter_config;
    } else if (const char* env = std::getenv(kFilterConfigEnv); env != nullptr && *env != '\0') {
        config_path = env;
    }
    if (config_path) {
        const FileConfig file = load_config(*config_path, err);
        cfg.filter = file.filter;
        if (file.strategy) cfg.strategy = *file.strategy;
        if (file.vote_threshold) cfg.vote_threshold = *file.vote_threshold;
    }
    if (f.strategy_opt->count() > 0) {
        const auto s = parse_strategy(f.strategy);
        if (!s) throw ConfigError("unknown strategy '" + f.strategy + "'");
        cfg.strategy = *s;
    }
    if (f.vote_opt->count() > 0) cfg.vote_threshold = f.vote_threshold;
    if (!f.model.empty()) cfg.model = f.model;
    cfg.out_dir = f.out_dir;
    if (!f.report.empty()) cfg.report = f.report;
    cfg.delay_us = f.delay_us;
    cfg.validate();
    return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Skin-pixel segmentation with color-space switching", "lumaswitch"};
    app.require_subcommand(1);

    SegmentFlags seg;
    std::vector<std::string> seg_inputs;
    auto* segment = app.add_subcommand("segment", "segment one or more PPM images");
    segment->add_option("inputs", seg_inputs, "input PPM files")->required();
    add_segment_flags(*segment, seg, false);

    SegmentFlags str;
    std::string frame_dir;
    auto* stream = app.add_subcommand("stream", "segment every PPM frame of a directory in order");
    stream->add_option("frames", frame_dir, "directory of PPM frames")->required();
    add_segment_flags(*stream, str, true);

    TrainOptions train_opts;
    std::string train_manifest, train_model, loss_csv;
    auto* train = app.add_subcommand("train", "fit the color-space selector network");
    train->add_option("manifest", train_manifest, "lines of '<image> <RGB|HSV|YCbCr>'")->required();
    train->add_option("--model", train_model, "output model JSON")->required();
    train->add_option("--loss-csv", loss_csv, "loss trace CSV (default: <model>.loss.csv)");
    train->add_option("--seed", train_opts.train.seed, "weight initialization seed");
    train->add_option("--epochs", train_opts.train.epochs, "gradient descent epochs")
        ->check(CLI::PositiveNumber);
    train->add_option("--learning-rate", train_opts.train.learning_rate, "step size")
        ->check(CLI::PositiveNumber);
    train->add_option("--hidden", train_opts.train.hidden_count, "hidden units")
        ->check(CLI::PositiveNumber);

    std::string eval_manifest, eval_model, eval_report;
    auto* eval = app.add_subcommand("eval", "confusion matrix of the selector on a manifest");
    eval->add_option("manifest", eval_manifest, "lines of '<image> <RGB|HSV|YCbCr>'")->required();
    eval->add_option("--model", eval_model, "model JSON")->required();
    eval->add_option("--report", eval_report, "write the JSON report here instead of stdout");

    std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(argv_tail.begin(), argv_tail.end());  // CLI11 consumes from the back
    try {
        app.parse(argv_tail);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kInvalidConfig;
    }

    try {
        if (segment->parsed()) {
            RunConfig cfg = build_run_config(seg, err);
            cfg.inputs.assign(seg_inputs.begin(), seg_inputs.end());
            return cmd_segment(cfg, out, err);
        }
        if (stream->parsed()) {
            const RunConfig cfg = build_run_config(str, err);
            return cmd_stream(cfg, frame_dir, out, err);
        }
        if (train->parsed()) {
            train_opts.manifest = train_manifest;
            train_opts.model_out = train_model;
            if (!loss_csv.empty()) train_opts.loss_csv = loss_csv;
            return cmd_train(train_opts, out, err);
        }
        if (eval->parsed()) {
            std::optional<fs::path> report;
            if (!eval_report.empty()) report = eval_report;
            return cmd_eval(eval_model, eval_manifest, report, out, err);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeFailure;
    }
    return kInvalidConfig;
}

}  // namespace lumaswitch::cli
