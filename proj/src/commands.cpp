#include "ag/commands.hpp"

#include <chrono>
#include <istream>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ag/metrics.hpp"
#include "ag/stream.hpp"

namespace ag {

namespace {

using ojson = nlohmann::ordered_json;

void pace(double rate) {
    if (rate > 0.0)
        std::this_thread::sleep_for(std::chrono::duration<double>(1.0 / rate));
}

bool parse_line_is_follow(const std::pair<std::string, long>& line) {
    try {
        return ojson::parse(line.first).contains("state");
    } catch (const nlohmann::json::exception& e) {
        throw input_error("line " + std::to_string(line.second) +
                          ": malformed JSON: " + e.what());
    }
}

}  // namespace

void run_track(const TrackOptions& options, std::istream& in, std::ostream& out) {
    Registry registry(options.config);
    LineSource source(in);
    std::int64_t prev_t = -1;
    while (auto line = source.next()) {
        const MarkerFrame frame = parse_frame(*line, source.line_number());
        if (frame.t <= prev_t)
            throw input_error("line " + std::to_string(source.line_number()) +
                              ": frame indices must be strictly increasing");
        prev_t = frame.t;
        const TrackUpdate update = registry.step(frame);
        write_events(out, {update.t, update.events});
    }
}

void run_build(const BuildOptions& options, std::istream& in,
               std::ostream& model_out, std::ostream& summary_out) {
    if (options.theta.has_value() == !options.theta_sweep.empty())
        throw input_error("build: provide exactly one of theta / theta sweep");

    const std::vector<FrameEvents> events = read_events(in);
    int max_blobs = 0;
    if (options.max_blobs) {
        max_blobs = *options.max_blobs;
    } else {
        for (const FrameEvents& fe : events)
            for (const TrackEvent& ev : fe.events)
                if (ev.action != TrackAction::kill)
                    max_blobs = std::max(max_blobs, ev.id + 1);
        if (max_blobs == 0)
            throw input_error("build: no blob events in input; pass max blobs explicitly");
    }

    FeatureBuilder builder(max_blobs);
    std::vector<std::vector<double>> features;
    features.reserve(events.size());
    for (const FrameEvents& fe : events) {
        builder.apply(fe);
        features.push_back(builder.features());
    }

    double theta = 0.0;
    ojson summary;
    if (options.theta) {
        theta = *options.theta;
    } else {
        const ThresholdSweep sweep = select_threshold(features, options.theta_sweep);
        theta = sweep.best_theta;
        summary["candidates"] = sweep.candidates;
        summary["scores"] = sweep.scores;
    }

    Oracle oracle(theta);
    for (const auto& f : features) oracle.add_frame(f);
    save_model(oracle, model_out);

    summary["theta"] = theta;
    summary["states"] = oracle.size();
    summary["clusters"] = oracle.num_clusters();
    summary["max_blobs"] = max_blobs;
    summary_out << summary.dump() << "\n";
}

void run_follow(const FollowOptions& options, const Oracle& oracle,
                std::istream& in, std::ostream& out) {
    if (oracle.dim() % 3 != 0)
        throw input_error("follow: model dimensionality is not 3 per blob");
    if (options.mapping) options.mapping->validate();
    FeatureBuilder builder(static_cast<int>(oracle.dim() / 3));

    LineSource source(in);
    std::optional<Follower> follower;
    while (auto line = source.next()) {
        const FrameEvents fe = parse_events(*line, source.line_number());
        builder.apply(fe);
        const std::vector<double> v = builder.features();
        if (!follower)
            follower.emplace(oracle, v);
        else
            follower->step(v);

        FollowRecord rec;
        rec.t = fe.t;
        rec.best = follower->best_cluster();
        rec.state = follower->best_state();
        rec.cost = follower->best_cost();
        if (options.mapping) {
            if (auto event = map_categorical(*follower, *options.mapping))
                rec.event = *event;
            if (auto scrub = map_temporal(*follower, *options.mapping)) {
                rec.scrub_timeline = scrub->timeline;
                rec.scrub_position = scrub->position;
            }
        }
        write_follow_record(out, rec);
        pace(options.pace_rate);
    }
}

void run_simulate(const SimulateOptions& options, std::ostream& frames_out,
                  std::ostream* truth_out) {
    const SimResult result = simulate(options.spec);
    for (std::size_t i = 0; i < result.frames.size(); ++i) {
        write_frame(frames_out, result.frames[i]);
        if (truth_out) write_truth(*truth_out, result.truth[i]);
        if (options.realtime) pace(options.spec.rate);
    }
}

void run_eval(std::istream& truth_in, std::istream& output_in, std::ostream& out) {
    const std::vector<TruthFrame> truth = read_truth(truth_in);

    std::vector<std::pair<std::string, long>> lines;
    {
        LineSource source(output_in);
        while (auto line = source.next())
            lines.emplace_back(*line, source.line_number());
    }
    if (lines.empty()) {
        if (!truth.empty()) throw input_error("eval: output is empty");
        out << ojson{{"frames", 0}}.dump() << "\n";
        return;
    }

    // The first record decides which evaluation applies.
    const bool follower_output = parse_line_is_follow(lines.front());

    TrackingMetrics metrics;
    if (follower_output) {
        std::vector<FollowRecord> records;
        for (const auto& [line, number] : lines)
            records.push_back(parse_follow_record(line, number));
        metrics = eval_following(records, truth);
    } else {
        std::vector<FrameEvents> events;
        for (const auto& [line, number] : lines)
            events.push_back(parse_events(line, number));
        metrics = eval_tracking(events, truth);
    }

    ojson doc;
    doc["frames"] = metrics.frames;
    if (follower_output) {
        if (metrics.index_correlation)
            doc["index_correlation"] = *metrics.index_correlation;
    } else {
        doc["identity_switches"] = metrics.identity_switches;
        doc["births"] = metrics.births;
        doc["deaths"] = metrics.deaths;
        doc["kills"] = metrics.kills;
        doc["position_error"] = {{"count", metrics.position_error.count},
                                 {"mean", metrics.position_error.mean},
                                 {"max", metrics.position_error.max}};
        auto& per_blob = doc["per_blob"] = ojson::object();
        for (const auto& [id, stats] : metrics.per_blob)
            per_blob[std::to_string(id)] = {{"count", stats.count},
                                            {"mean", stats.mean},
                                            {"max", stats.max}};
    }
    out << doc.dump() << "\n";
}

void run_segments(const Oracle& oracle, int min_length, std::ostream& out) {
    for (const RepeatedSegment& seg : repeated_segments(oracle, min_length)) {
        ojson j;
        j["start"] = seg.start;
        j["end"] = seg.end;
        j["match_start"] = seg.match_start;
        j["match_end"] = seg.match_end;
        j["length"] = seg.length;
        out << j.dump() << "\n";
    }
}

MappingConfig read_mapping(std::istream& in) {
    ojson doc;
    try {
        doc = ojson::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("mapping: malformed document: ") + e.what());
    }
    MappingConfig config;
    try {
        if (doc.contains("categorical"))
            for (const auto& rule : doc["categorical"]) {
                const int label = rule.at("label").get<int>();
                if (config.categorical.count(label))
                    throw input_error("mapping: duplicate rule for label " +
                                      std::to_string(label));
                config.categorical[label] = rule.at("event").get<std::string>();
            }
        if (doc.contains("spans"))
            for (const auto& span : doc["spans"])
                config.spans.push_back({span.at("name").get<std::string>(),
                                        span.at("start").get<int>(),
                                        span.at("end").get<int>()});
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("mapping: missing or mistyped field: ") + e.what());
    }
    config.validate();
    return config;
}

void write_mapping(const MappingConfig& config, std::ostream& out) {
    ojson doc;
    auto& rules = doc["categorical"] = ojson::array();
    for (const auto& [label, event] : config.categorical)
        rules.push_back({{"label", label}, {"event", event}});
    auto& spans = doc["spans"] = ojson::array();
    for (const auto& span : config.spans)
        spans.push_back(
            {{"name", span.name}, {"start", span.start}, {"end", span.end}});
    out << doc.dump(2) << "\n";
}

}  // namespace ag
