#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ag/vmo.hpp"

namespace ag {

// Online matcher over a frozen oracle. Keeps one candidate per cluster:
// path_[k] is that candidate's current oracle state, cost_[k] its running
// distance sum. Each step moves a candidate greedily within the states
// reachable from it by one forward link (or inside its own cluster).
// Single writer per follower; any number of followers may share an oracle.
class Follower {
public:
    // Seeds every candidate with the closest state of its cluster.
    Follower(const Oracle& oracle, std::span<const double> first);

    // Consumes one observation, updates all candidates, and returns the
    // best-matching oracle state.
    int step(std::span<const double> v);

    const std::vector<int>& path() const { return path_; }
    const std::vector<double>& cost() const { return cost_; }
    int best_cluster() const { return best_; }
    int best_state() const { return path_[static_cast<std::size_t>(best_)]; }
    double best_cost() const { return cost_[static_cast<std::size_t>(best_)]; }
    // Number of observations consumed, including the seeding one.
    long frames_seen() const { return frames_seen_; }
    const Oracle& oracle() const { return *oracle_; }

private:
    void check_dim(std::span<const double> v) const;
    void recompute_best();

    const Oracle* oracle_;
    std::vector<int> path_;    // M
    std::vector<double> cost_; // C
    int best_ = 0;
    long frames_seen_ = 0;
};

// Event bindings: cluster labels trigger named events, state intervals
// scrub named timelines.
struct MappingConfig {
    struct Span {
        std::string name;
        int start = 1;  // oracle states, 1 <= start <= end
        int end = 1;
    };

    std::map<int, std::string> categorical;  // label -> event name
    std::vector<Span> spans;

    void validate() const;
};

// Event bound to the best candidate's cluster, if any.
std::optional<std::string> map_categorical(const Follower& follower,
                                           const MappingConfig& config);

struct ScrubPosition {
    std::string timeline;
    double position = 0.0;  // in [0, 1]
};

// Progress through the first configured span containing the best state.
std::optional<ScrubPosition> map_temporal(const Follower& follower,
                                          const MappingConfig& config);

// A repeated stretch of the stored series: states [start, end] repeat the
// earlier stretch [match_start, match_end].
struct RepeatedSegment {
    int start = 0;
    int end = 0;
    int match_start = 0;
    int match_end = 0;
    int length = 0;
};

// Maximal repeated-suffix intervals, candidate gestures for mapping.
std::vector<RepeatedSegment> repeated_segments(const Oracle& oracle,
                                               int min_length = 2);

}  // namespace ag
