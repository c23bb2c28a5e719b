#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ag/follower.hpp"
#include "ag/sim.hpp"
#include "ag/tracker.hpp"

namespace ag {

// The CLI subcommands as stream-to-stream functions, so pipelines can be
// run in-process (tests) or across files (tools/actiongraph).

struct TrackOptions {
    TrackerConfig config;
};

void run_track(const TrackOptions& options, std::istream& in, std::ostream& out);

struct BuildOptions {
    std::optional<double> theta;           // exactly one of theta / sweep
    std::vector<double> theta_sweep;
    std::optional<int> max_blobs;          // feature layout; inferred if absent
};

// Writes the model to `model_out` and a one-line JSON summary (chosen
// theta, sweep scores, size, clusters) to `summary_out`.
void run_build(const BuildOptions& options, std::istream& in,
               std::ostream& model_out, std::ostream& summary_out);

struct FollowOptions {
    std::optional<MappingConfig> mapping;
    double pace_rate = 0.0;  // > 0: sleep 1/rate between records
};

void run_follow(const FollowOptions& options, const Oracle& oracle,
                std::istream& in, std::ostream& out);

struct SimulateOptions {
    ScenarioSpec spec;
    bool realtime = false;  // pace emission at spec.rate
};

void run_simulate(const SimulateOptions& options, std::ostream& frames_out,
                  std::ostream* truth_out);

// Auto-detects tracker vs follower output by the record fields.
void run_eval(std::istream& truth_in, std::istream& output_in, std::ostream& out);

void run_segments(const Oracle& oracle, int min_length, std::ostream& out);

// Mapping configuration document:
//   {"categorical":[{"label":0,"event":"strobe_on"},...],
//    "spans":[{"name":"clipA","start":10,"end":20},...]}
MappingConfig read_mapping(std::istream& in);
void write_mapping(const MappingConfig& config, std::ostream& out);

}  // namespace ag
