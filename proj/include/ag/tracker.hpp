#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ag/core.hpp"

namespace ag {

enum class BlobState { unseen, alive, dead };

// One identity slot. Unseen blobs have never been observed; dead blobs
// keep their last observed coordinate frozen for later reacquisition.
struct Blob {
    int id = 0;
    BlobState state = BlobState::unseen;
    std::optional<Point3> last_pos;
    std::optional<std::int64_t> last_seen_t;
};

struct TrackerConfig {
    int max_blobs = 0;
    // Cost of matching a never-observed blob to a marker. Finite stand-in
    // for an unbounded distance; must exceed any plausible stage distance.
    double birth_cost = 10.0;
    // Continuity bias in (0, 1]: scheme 1 (keep alive blobs alive, give
    // leftovers to dead blobs) wins when bias * c1 <= c2. 1 disables the
    // bias.
    double bias = 0.9;

    void validate() const;
};

enum class TrackAction { living, death, birth, kill };

const char* to_string(TrackAction a);

// For living/birth/kill, pos is the incoming marker. For kill, id is the
// index of the discarded marker within the frame's marker list, not a
// registry blob id.
struct TrackEvent {
    int id = 0;
    TrackAction action = TrackAction::living;
    std::optional<Point3> pos;

    friend bool operator==(const TrackEvent&, const TrackEvent&) = default;
};

struct TrackUpdate {
    std::int64_t t = 0;
    std::vector<TrackEvent> events;  // blob events by ascending id, then kills
    std::vector<Blob> blobs;         // snapshot after the step
};

// Identity-preserving multi-marker tracker. Single writer: steps must be
// applied sequentially in frame order.
class Registry {
public:
    explicit Registry(const TrackerConfig& config);

    // Associates one frame of markers with the blob slots and advances
    // the lifecycle. frame.t must exceed every previously processed t.
    TrackUpdate step(const MarkerFrame& frame);

    std::vector<Blob> snapshot() const { return blobs_; }
    const TrackerConfig& config() const { return config_; }

private:
    TrackerConfig config_;
    std::vector<Blob> blobs_;
    std::int64_t last_t_ = -1;
    bool any_frame_ = false;
};

}  // namespace ag
