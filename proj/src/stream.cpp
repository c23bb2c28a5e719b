#include "ag/stream.hpp"

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace ag {

namespace {

using ojson = nlohmann::ordered_json;

[[noreturn]] void fail_line(long line_number, const std::string& what) {
    throw input_error("line " + std::to_string(line_number) + ": " + what);
}

ojson parse_line(const std::string& line, long line_number) {
    try {
        return ojson::parse(line);
    } catch (const nlohmann::json::exception& e) {
        fail_line(line_number, std::string("malformed JSON: ") + e.what());
    }
}

Point3 point_from(const ojson& j, long line_number) {
    if (!j.is_array() || j.size() != 3)
        fail_line(line_number, "marker must be an [x,y,z] array");
    Point3 p{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
    if (!p.finite()) fail_line(line_number, "non-finite marker coordinate");
    return p;
}

ojson point_to(const Point3& p) { return ojson::array({p.x, p.y, p.z}); }

TrackAction action_from(const std::string& s, long line_number) {
    if (s == "living") return TrackAction::living;
    if (s == "death") return TrackAction::death;
    if (s == "birth") return TrackAction::birth;
    if (s == "kill") return TrackAction::kill;
    fail_line(line_number, "unknown action '" + s + "'");
}

}  // namespace

std::optional<std::string> LineSource::next() {
    std::string line;
    while (std::getline(*in_, line)) {
        ++line_;
        if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
    }
    return std::nullopt;
}

MarkerFrame parse_frame(const std::string& line, long line_number) {
    const ojson j = parse_line(line, line_number);
    MarkerFrame frame;
    try {
        frame.t = j.at("t").get<std::int64_t>();
        for (const auto& m : j.at("markers"))
            frame.markers.push_back(point_from(m, line_number));
    } catch (const nlohmann::json::exception& e) {
        fail_line(line_number, std::string("bad frame: ") + e.what());
    }
    if (frame.t < 0) fail_line(line_number, "negative frame index");
    return frame;
}

FrameEvents parse_events(const std::string& line, long line_number) {
    const ojson j = parse_line(line, line_number);
    FrameEvents fe;
    try {
        fe.t = j.at("t").get<std::int64_t>();
        for (const auto& ev : j.at("events")) {
            TrackEvent event;
            event.id = ev.at("id").get<int>();
            event.action = action_from(ev.at("action").get<std::string>(), line_number);
            if (ev.contains("pos")) event.pos = point_from(ev["pos"], line_number);
            if (!event.pos && event.action != TrackAction::death)
                fail_line(line_number, "event missing pos");
            fe.events.push_back(event);
        }
    } catch (const nlohmann::json::exception& e) {
        fail_line(line_number, std::string("bad event record: ") + e.what());
    }
    return fe;
}

TruthFrame parse_truth(const std::string& line, long line_number) {
    const ojson j = parse_line(line, line_number);
    TruthFrame truth;
    try {
        truth.t = j.at("t").get<std::int64_t>();
        for (const auto& id : j.at("ids")) truth.ids.push_back(id.get<int>());
        for (const auto& m : j.at("markers"))
            truth.markers.push_back(point_from(m, line_number));
        if (j.contains("src")) truth.src = j["src"].get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        fail_line(line_number, std::string("bad truth record: ") + e.what());
    }
    if (truth.ids.size() != truth.markers.size())
        fail_line(line_number, "ids and markers lengths differ");
    return truth;
}

FollowRecord parse_follow_record(const std::string& line, long line_number) {
    const ojson j = parse_line(line, line_number);
    FollowRecord rec;
    try {
        rec.t = j.at("t").get<std::int64_t>();
        rec.best = j.at("best").get<int>();
        rec.state = j.at("state").get<int>();
        rec.cost = j.at("cost").get<double>();
        if (j.contains("event")) rec.event = j["event"].get<std::string>();
        if (j.contains("scrub")) {
            rec.scrub_timeline = j["scrub"].at("timeline").get<std::string>();
            rec.scrub_position = j["scrub"].at("position").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        fail_line(line_number, std::string("bad follow record: ") + e.what());
    }
    return rec;
}

namespace {

template <typename T, typename Parse>
std::vector<T> read_all(std::istream& in, Parse parse) {
    LineSource source(in);
    std::vector<T> out;
    while (auto line = source.next())
        out.push_back(parse(*line, source.line_number()));
    return out;
}

}  // namespace

std::vector<MarkerFrame> read_frames(std::istream& in) {
    auto frames = read_all<MarkerFrame>(in, parse_frame);
    for (std::size_t i = 1; i < frames.size(); ++i)
        if (frames[i].t <= frames[i - 1].t)
            throw input_error("frame indices must be strictly increasing (t=" +
                              std::to_string(frames[i].t) + " after t=" +
                              std::to_string(frames[i - 1].t) + ")");
    return frames;
}

std::vector<FrameEvents> read_events(std::istream& in) {
    return read_all<FrameEvents>(in, parse_events);
}

std::vector<TruthFrame> read_truth(std::istream& in) {
    return read_all<TruthFrame>(in, parse_truth);
}

std::vector<FollowRecord> read_follow_records(std::istream& in) {
    return read_all<FollowRecord>(in, parse_follow_record);
}

void write_frame(std::ostream& out, const MarkerFrame& frame) {
    ojson j;
    j["t"] = frame.t;
    auto& markers = j["markers"] = ojson::array();
    for (const Point3& p : frame.markers) markers.push_back(point_to(p));
    out << j.dump() << "\n";
}

void write_events(std::ostream& out, const FrameEvents& events) {
    ojson j;
    j["t"] = events.t;
    auto& evs = j["events"] = ojson::array();
    for (const TrackEvent& event : events.events) {
        ojson e;
        e["id"] = event.id;
        e["action"] = to_string(event.action);
        if (event.pos) e["pos"] = point_to(*event.pos);
        evs.push_back(std::move(e));
    }
    out << j.dump() << "\n";
}

void write_truth(std::ostream& out, const TruthFrame& truth) {
    ojson j;
    j["t"] = truth.t;
    j["ids"] = truth.ids;
    auto& markers = j["markers"] = ojson::array();
    for (const Point3& p : truth.markers) markers.push_back(point_to(p));
    if (truth.src) j["src"] = *truth.src;
    out << j.dump() << "\n";
}

void write_follow_record(std::ostream& out, const FollowRecord& rec) {
    ojson j;
    j["t"] = rec.t;
    j["best"] = rec.best;
    j["state"] = rec.state;
    j["cost"] = rec.cost;
    if (rec.event) j["event"] = *rec.event;
    if (rec.scrub_timeline) {
        j["scrub"]["timeline"] = *rec.scrub_timeline;
        j["scrub"]["position"] = *rec.scrub_position;
    }
    out << j.dump() << "\n";
}

FeatureBuilder::FeatureBuilder(int max_blobs) : max_blobs_(max_blobs) {
    if (max_blobs <= 0)
        throw input_error("feature builder: max_blobs must be positive");
    positions_.resize(static_cast<std::size_t>(max_blobs));
}

void FeatureBuilder::apply(const FrameEvents& events) {
    for (const TrackEvent& event : events.events) {
        if (event.action == TrackAction::kill) continue;  // id is a marker index
        if (event.id < 0 || event.id >= max_blobs_) continue;
        const auto idx = static_cast<std::size_t>(event.id);
        switch (event.action) {
            case TrackAction::living:
            case TrackAction::birth:
                positions_[idx] = event.pos;
                break;
            case TrackAction::death:
                positions_[idx] = std::nullopt;
                break;
            case TrackAction::kill:
                break;
        }
    }
}

std::vector<double> FeatureBuilder::features() const {
    std::vector<double> v;
    v.reserve(positions_.size() * 3);
    for (const auto& p : positions_) {
        v.push_back(p ? p->x : 0.0);
        v.push_back(p ? p->y : 0.0);
        v.push_back(p ? p->z : 0.0);
    }
    return v;
}

}  // namespace ag
