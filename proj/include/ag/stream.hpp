#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ag/core.hpp"
#include "ag/tracker.hpp"

namespace ag {

// Tracker events for one frame, as carried on the wire.
struct FrameEvents {
    std::int64_t t = 0;
    std::vector<TrackEvent> events;

    friend bool operator==(const FrameEvents&, const FrameEvents&) = default;
};

// Per-frame ground truth emitted by the simulator: the true identity and
// clean position of every emitted marker, plus (for gesture/concat) the
// index of the stored frame this one replays. Identity -1 marks noise.
struct TruthFrame {
    std::int64_t t = 0;
    std::vector<int> ids;
    std::vector<Point3> markers;
    std::optional<std::int64_t> src;

    friend bool operator==(const TruthFrame&, const TruthFrame&) = default;
};

// One line of follower output.
struct FollowRecord {
    std::int64_t t = 0;
    int best = 0;    // best cluster index
    int state = 0;   // matched oracle state
    double cost = 0.0;
    std::optional<std::string> event;
    std::optional<std::string> scrub_timeline;
    std::optional<double> scrub_position;
};

// Line-delimited JSON framing. Formats:
//   frames : {"t":0,"markers":[[x,y,z],...]}
//   events : {"t":0,"events":[{"id":0,"action":"living","pos":[x,y,z]},...]}
//   truth  : {"t":0,"ids":[0,1],"markers":[[x,y,z],...],"src":12}
//   follow : {"t":0,"best":0,"state":1,"cost":0.0,"event":"...","scrub":{...}}
// Readers report malformed lines with their line number. Writers emit one
// object per line with the field order shown above.

std::vector<MarkerFrame> read_frames(std::istream& in);       // enforces ascending t
std::vector<FrameEvents> read_events(std::istream& in);
std::vector<TruthFrame> read_truth(std::istream& in);
std::vector<FollowRecord> read_follow_records(std::istream& in);

void write_frame(std::ostream& out, const MarkerFrame& frame);
void write_events(std::ostream& out, const FrameEvents& events);
void write_truth(std::ostream& out, const TruthFrame& truth);
void write_follow_record(std::ostream& out, const FollowRecord& rec);

// Incremental line reader used by the CLI so streams are not buffered
// whole. parse_* convert one already-read line.
class LineSource {
public:
    explicit LineSource(std::istream& in) : in_(&in) {}
    // Next non-blank line, or nullopt at end of input.
    std::optional<std::string> next();
    long line_number() const { return line_; }

private:
    std::istream* in_;
    long line_ = 0;
};

MarkerFrame parse_frame(const std::string& line, long line_number);
FrameEvents parse_events(const std::string& line, long line_number);
TruthFrame parse_truth(const std::string& line, long line_number);
FollowRecord parse_follow_record(const std::string& line, long line_number);

// Rebuilds the follower feature vector from tracker output: blob
// coordinates concatenated in id order, zeros while a blob is dead or
// unseen. The layout (number of blob slots) is fixed when the model is
// recorded.
class FeatureBuilder {
public:
    explicit FeatureBuilder(int max_blobs);

    void apply(const FrameEvents& events);
    std::vector<double> features() const;  // size 3 * max_blobs
    int max_blobs() const { return max_blobs_; }

private:
    int max_blobs_;
    std::vector<std::optional<Point3>> positions_;
};

}  // namespace ag
