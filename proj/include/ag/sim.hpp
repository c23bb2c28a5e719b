#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ag/core.hpp"
#include "ag/stream.hpp"

namespace ag {

// Synthetic stage scenarios. All randomness is drawn from the seed, so a
// spec reproduces its streams exactly.
struct ScenarioSpec {
    enum class Kind { cross, occlude, rebirth, noise, gesture, concat };

    Kind kind = Kind::cross;
    int frames = 60;
    double rate = 30.0;       // frames per second, metadata for curve shapes
    std::uint64_t seed = 0;

    int markers = 0;          // 0 = kind default (cross 2, others 4)
    int hide_from = -1;       // occlude/rebirth window [hide_from, hide_to)
    int hide_to = -1;         // defaults to the middle third
    int hide_count = 2;
    double reappear_jitter = 0.05;  // rebirth: meters around the frozen pos
    int noise_extra = 1;      // noise: spurious markers per noisy frame
    int gestures = 3;         // concat: distinct sections
    int repeat_of = 0;        // concat: which section is replayed
    double warp = 1.0;        // concat: >1 replays faster, <1 slower
    double noise_level = 0.0; // additive noise, fraction of coordinate range

    void validate() const;
};

ScenarioSpec::Kind scenario_kind_from(const std::string& name);
const char* to_string(ScenarioSpec::Kind kind);

struct SimResult {
    std::vector<MarkerFrame> frames;
    std::vector<TruthFrame> truth;
    // concat: first frame index of the warped replay section, -1 otherwise.
    std::int64_t query_begin = -1;
};

SimResult simulate(const ScenarioSpec& spec);

}  // namespace ag
