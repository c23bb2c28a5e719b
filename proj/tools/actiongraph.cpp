// actiongraph: track 3D markers, learn repeated movement patterns from a
// recording, and follow a live stream through them.
//
//   simulate -> track -> build -> follow -> eval
//
// All streams are line-delimited JSON; "-" means stdin/stdout.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ag/commands.hpp"
#include "ag/stream.hpp"
#include "ag/vmo.hpp"

namespace {

struct StreamGuard {
    std::unique_ptr<std::ifstream> in_file;
    std::unique_ptr<std::ofstream> out_file;

    std::istream& open_in(const std::string& path) {
        if (path == "-") return std::cin;
        in_file = std::make_unique<std::ifstream>(path);
        if (!*in_file) throw ag::input_error("cannot open '" + path + "' for reading");
        return *in_file;
    }

    std::ostream& open_out(const std::string& path) {
        if (path == "-") return std::cout;
        out_file = std::make_unique<std::ofstream>(path);
        if (!*out_file) throw ag::input_error("cannot open '" + path + "' for writing");
        return *out_file;
    }
};

std::vector<double> parse_sweep(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ag::input_error("bad theta sweep value '" + item + "'");
        }
    }
    return values;
}

ag::Oracle load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ag::input_error("cannot open model '" + path + "'");
    return ag::load_model(in);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"3D marker tracking and online gesture following"};
    app.require_subcommand(1);

    // track
    auto* track = app.add_subcommand("track", "assign stable ids to marker streams");
    std::string track_input = "-", track_output = "-";
    ag::TrackOptions track_options;
    track->add_option("--input", track_input, "marker frames (ndjson)");
    track->add_option("--output", track_output, "event stream destination");
    track->add_option("--max-blobs", track_options.config.max_blobs, "identity slots")
        ->required();
    track->add_option("--birth-cost", track_options.config.birth_cost,
                      "matching cost for never-seen blobs (m)");
    track->add_option("--bias", track_options.config.bias,
                      "continuity bias in (0,1]; 1 disables");

    // build
    auto* build = app.add_subcommand("build", "learn a gesture model from a tracked recording");
    std::string build_input = "-", build_model;
    double build_theta = 0.0;
    std::string build_sweep;
    int build_max_blobs = 0;
    build->add_option("--input", build_input, "tracked event stream (ndjson)");
    build->add_option("--model", build_model, "model file to write")->required();
    auto* theta_opt = build->add_option("--theta", build_theta, "similarity radius");
    auto* sweep_opt =
        build->add_option("--theta-sweep", build_sweep, "comma-separated candidates");
    theta_opt->excludes(sweep_opt);
    build->add_option("--max-blobs", build_max_blobs,
                      "feature layout; inferred from the stream if omitted");

    // follow
    auto* follow = app.add_subcommand("follow", "match a live tracked stream against a model");
    std::string follow_input = "-", follow_output = "-", follow_model, follow_mapping;
    bool follow_realtime = false;
    double follow_rate = 30.0;
    follow->add_option("--model", follow_model, "model file")->required();
    follow->add_option("--input", follow_input, "tracked event stream (ndjson)");
    follow->add_option("--output", follow_output, "match records destination");
    follow->add_option("--mapping", follow_mapping, "mapping config (json)");
    follow->add_flag("--realtime", follow_realtime, "pace output at --rate");
    follow->add_option("--rate", follow_rate, "frames per second for --realtime");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "generate synthetic stage scenarios");
    std::string sim_kind = "cross", sim_output = "-", sim_truth;
    bool sim_realtime = false;
    ag::SimulateOptions sim_options;
    simulate->add_option("--kind", sim_kind, "cross|occlude|rebirth|noise|gesture|concat");
    simulate->add_option("--frames", sim_options.spec.frames, "duration in frames");
    simulate->add_option("--seed", sim_options.spec.seed, "rng seed");
    simulate->add_option("--rate", sim_options.spec.rate, "frames per second");
    simulate->add_option("--markers", sim_options.spec.markers, "marker count (0 = default)");
    simulate->add_option("--hide-from", sim_options.spec.hide_from, "occlusion window start");
    simulate->add_option("--hide-to", sim_options.spec.hide_to, "occlusion window end");
    simulate->add_option("--hide-count", sim_options.spec.hide_count, "markers to hide");
    simulate->add_option("--reappear-jitter", sim_options.spec.reappear_jitter,
                         "rebirth offset bound (m)");
    simulate->add_option("--noise-extra", sim_options.spec.noise_extra,
                         "spurious markers per noisy frame");
    simulate->add_option("--gestures", sim_options.spec.gestures, "concat sections");
    simulate->add_option("--repeat-of", sim_options.spec.repeat_of, "replayed section");
    simulate->add_option("--warp", sim_options.spec.warp, "replay time warp factor");
    simulate->add_option("--noise-level", sim_options.spec.noise_level,
                         "additive noise, fraction of range");
    simulate->add_option("--output", sim_output, "frame stream destination");
    simulate->add_option("--truth", sim_truth, "ground-truth destination");
    simulate->add_flag("--realtime", sim_realtime, "pace emission at --rate");

    // eval
    auto* eval = app.add_subcommand("eval", "score tracker or follower output against truth");
    std::string eval_truth, eval_output, eval_out = "-";
    eval->add_option("--truth", eval_truth, "ground-truth stream")->required();
    eval->add_option("--output", eval_output, "stream to score")->required();
    eval->add_option("--metrics", eval_out, "metrics destination");

    // segments
    auto* segments = app.add_subcommand("segments", "report repeated stretches of a model");
    std::string segments_model, segments_out = "-";
    int segments_min_length = 2;
    segments->add_option("--model", segments_model, "model file")->required();
    segments->add_option("--min-length", segments_min_length, "minimum repeat length");
    segments->add_option("--output", segments_out, "report destination");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        StreamGuard io;
        if (track->parsed()) {
            ag::run_track(track_options, io.open_in(track_input),
                          io.open_out(track_output));
        } else if (build->parsed()) {
            ag::BuildOptions options;
            if (theta_opt->count()) options.theta = build_theta;
            if (sweep_opt->count()) options.theta_sweep = parse_sweep(build_sweep);
            if (build_max_blobs > 0) options.max_blobs = build_max_blobs;
            std::ofstream model_out(build_model);
            if (!model_out)
                throw ag::input_error("cannot open model '" + build_model + "' for writing");
            ag::run_build(options, io.open_in(build_input), model_out, std::cout);
        } else if (follow->parsed()) {
            ag::FollowOptions options;
            if (!follow_mapping.empty()) {
                std::ifstream mapping_in(follow_mapping);
                if (!mapping_in)
                    throw ag::input_error("cannot open mapping '" + follow_mapping + "'");
                options.mapping = ag::read_mapping(mapping_in);
            }
            if (follow_realtime) options.pace_rate = follow_rate;
            const ag::Oracle oracle = load_model_file(follow_model);
            ag::run_follow(options, oracle, io.open_in(follow_input),
                           io.open_out(follow_output));
        } else if (simulate->parsed()) {
            sim_options.spec.kind = ag::scenario_kind_from(sim_kind);
            sim_options.realtime = sim_realtime;
            std::ofstream truth_file;
            std::ostream* truth_stream = nullptr;
            if (!sim_truth.empty()) {
                truth_file.open(sim_truth);
                if (!truth_file)
                    throw ag::input_error("cannot open '" + sim_truth + "' for writing");
                truth_stream = &truth_file;
            }
            ag::run_simulate(sim_options, io.open_out(sim_output), truth_stream);
        } else if (eval->parsed()) {
            std::ifstream truth_in(eval_truth);
            if (!truth_in) throw ag::input_error("cannot open '" + eval_truth + "'");
            std::ifstream output_in(eval_output);
            if (!output_in) throw ag::input_error("cannot open '" + eval_output + "'");
            ag::run_eval(truth_in, output_in, io.open_out(eval_out));
        } else if (segments->parsed()) {
            const ag::Oracle oracle = load_model_file(segments_model);
            ag::run_segments(oracle, segments_min_length, io.open_out(segments_out));
        }
    } catch (const ag::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ag::contract_error& e) {
        std::cerr << "contract violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
