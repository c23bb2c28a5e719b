#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "ag/stream.hpp"

namespace ag {

struct PositionErrorStats {
    std::int64_t count = 0;
    double mean = 0.0;
    double max = 0.0;
};

struct TrackingMetrics {
    std::int64_t frames = 0;
    std::int64_t identity_switches = 0;
    std::int64_t births = 0;
    std::int64_t deaths = 0;
    std::int64_t kills = 0;
    PositionErrorStats position_error;               // all blobs pooled
    std::map<int, PositionErrorStats> per_blob;      // by blob id
    std::optional<double> index_correlation;         // follower eval only
};

// Scores tracker output against simulator ground truth. Streams must
// cover the same frame indices. Each living/birth event is matched to the
// nearest truth marker of its frame; a blob whose matched true identity
// changes between consecutive appearances counts as one identity switch.
TrackingMetrics eval_tracking(const std::vector<FrameEvents>& output,
                              const std::vector<TruthFrame>& truth);

// Scores follower output against ground-truth source indices: Spearman
// rank correlation between matched oracle states and truth src values.
TrackingMetrics eval_following(const std::vector<FollowRecord>& output,
                               const std::vector<TruthFrame>& truth);

// Spearman rank correlation with average ranks on ties. nullopt when
// either sequence is constant or lengths differ or are < 2.
std::optional<double> spearman(const std::vector<double>& a,
                               const std::vector<double>& b);

}  // namespace ag
