#include "ag/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace ag {

void ScenarioSpec::validate() const {
    if (frames < 1) throw input_error("scenario: duration must be >= 1 frame");
    if (!(rate > 0.0)) throw input_error("scenario: rate must be positive");
    if (markers < 0) throw input_error("scenario: negative marker count");
    if (kind == Kind::concat) {
        if (gestures < 1) throw input_error("scenario: need at least one gesture");
        if (repeat_of < 0 || repeat_of >= gestures)
            throw input_error("scenario: repeat_of out of range");
        if (!(warp > 0.0)) throw input_error("scenario: warp must be positive");
    }
    if (noise_level < 0.0) throw input_error("scenario: negative noise level");
}

ScenarioSpec::Kind scenario_kind_from(const std::string& name) {
    if (name == "cross") return ScenarioSpec::Kind::cross;
    if (name == "occlude") return ScenarioSpec::Kind::occlude;
    if (name == "rebirth") return ScenarioSpec::Kind::rebirth;
    if (name == "noise") return ScenarioSpec::Kind::noise;
    if (name == "gesture") return ScenarioSpec::Kind::gesture;
    if (name == "concat") return ScenarioSpec::Kind::concat;
    throw input_error("unknown scenario kind '" + name + "'");
}

const char* to_string(ScenarioSpec::Kind kind) {
    switch (kind) {
        case ScenarioSpec::Kind::cross: return "cross";
        case ScenarioSpec::Kind::occlude: return "occlude";
        case ScenarioSpec::Kind::rebirth: return "rebirth";
        case ScenarioSpec::Kind::noise: return "noise";
        case ScenarioSpec::Kind::gesture: return "gesture";
        case ScenarioSpec::Kind::concat: return "concat";
    }
    return "?";
}

namespace {

// Engine-bit based draws so streams are reproducible across standard
// library implementations, not just across runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[static_cast<std::size_t>(uniform_int(0, static_cast<int>(i) - 1))]);
    }

private:
    std::mt19937_64 eng_;
};

// Smooth pseudo-gesture: three seeded harmonics per axis around an anchor.
struct Curve {
    Point3 anchor;
    double amp[3][3];
    double freq[3][3];
    double phase[3][3];

    static Curve make(Rng& rng, const Point3& anchor, double scale) {
        Curve c;
        c.anchor = anchor;
        for (int axis = 0; axis < 3; ++axis)
            for (int h = 0; h < 3; ++h) {
                c.amp[axis][h] = scale * rng.uniform(0.2, 1.0) / (h + 1);
                c.freq[axis][h] = rng.uniform(0.1, 0.5) * (h + 1);
                c.phase[axis][h] = rng.uniform(0.0, 2.0 * std::numbers::pi);
            }
        return c;
    }

    Point3 at(double seconds) const {
        double out[3] = {anchor.x, anchor.y, anchor.z};
        for (int axis = 0; axis < 3; ++axis)
            for (int h = 0; h < 3; ++h)
                out[axis] += amp[axis][h] *
                             std::sin(2.0 * std::numbers::pi * freq[axis][h] * seconds +
                                      phase[axis][h]);
        return {out[0], out[1], out[2]};
    }
};

struct Sample {
    int id;
    Point3 pos;
};

void emit(SimResult& result, Rng& rng, std::int64_t t, std::vector<Sample> samples,
          std::optional<std::int64_t> src = std::nullopt) {
    rng.shuffle(samples);
    MarkerFrame frame;
    frame.t = t;
    TruthFrame truth;
    truth.t = t;
    truth.src = src;
    for (const Sample& s : samples) {
        frame.markers.push_back(s.pos);
        truth.ids.push_back(s.id);
        truth.markers.push_back(s.pos);
    }
    result.frames.push_back(std::move(frame));
    result.truth.push_back(std::move(truth));
}

SimResult simulate_cross(const ScenarioSpec& spec, Rng& rng) {
    const int n = std::max(spec.frames, 2);
    // Two markers swap x-sides while keeping a lateral separation large
    // enough that per-frame displacement stays under half of it.
    const double sep = rng.uniform(0.15, 0.4);
    const double travel = rng.uniform(1.6, 2.4);
    const double z = rng.uniform(1.5, 2.5);
    const double wobble = rng.uniform(0.0, 0.01);
    SimResult result;
    for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / (n - 1);  // 0..1
        const double x = -travel / 2 + travel * u;
        const double w = wobble * std::sin(6.0 * u * std::numbers::pi);
        std::vector<Sample> samples{
            {0, {x, sep / 2 + w, z}},
            {1, {-x, -sep / 2 - w, z}},
        };
        emit(result, rng, i, std::move(samples));
    }
    return result;
}

// Shared by occlude/rebirth: slow orbits around spaced anchors; hidden
// markers hold still so they return where they vanished.
SimResult simulate_occlusion(const ScenarioSpec& spec, Rng& rng, bool jitter_return) {
    const int n = spec.frames;
    const int count = spec.markers > 0 ? spec.markers : 4;
    int from = spec.hide_from >= 0 ? spec.hide_from : n / 3;
    int to = spec.hide_to >= 0 ? spec.hide_to : 2 * n / 3;
    from = std::clamp(from, 0, n);
    to = std::clamp(to, from, n);
    const int hidden_count = std::min(spec.hide_count, count);

    std::vector<Curve> curves;
    std::vector<bool> hidden(static_cast<std::size_t>(count), false);
    for (int i = 0; i < count; ++i) {
        const Point3 anchor{-1.2 + 0.8 * i, rng.uniform(-0.2, 0.2),
                            2.0 + rng.uniform(-0.3, 0.3)};
        curves.push_back(Curve::make(rng, anchor, 0.08));
    }
    // Hide a seeded subset.
    {
        std::vector<int> order(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) order[static_cast<std::size_t>(i)] = i;
        rng.shuffle(order);
        for (int i = 0; i < hidden_count; ++i)
            hidden[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = true;
    }

    std::vector<double> clock(static_cast<std::size_t>(count), 0.0);
    std::vector<Point3> jitter(static_cast<std::size_t>(count), Point3{});
    if (jitter_return) {
        for (int i = 0; i < count; ++i) {
            const double r = spec.reappear_jitter;
            jitter[static_cast<std::size_t>(i)] =
                Point3{rng.uniform(-r, r) / 2, rng.uniform(-r, r) / 2,
                       rng.uniform(-r, r) / 2};
        }
    }

    SimResult result;
    for (int i = 0; i < n; ++i) {
        std::vector<Sample> samples;
        const bool in_window = i >= from && i < to;
        for (int b = 0; b < count; ++b) {
            const auto bi = static_cast<std::size_t>(b);
            if (hidden[bi] && in_window) continue;  // frozen clock: holds still
            if (!hidden[bi] || i < from) clock[bi] += 1.0 / spec.rate;
            else if (i >= to) clock[bi] += 1.0 / spec.rate;
            Point3 pos = curves[bi].at(clock[bi]);
            if (hidden[bi] && i == to && jitter_return) {
                pos.x += jitter[bi].x;
                pos.y += jitter[bi].y;
                pos.z += jitter[bi].z;
            }
            samples.push_back({b, pos});
        }
        emit(result, rng, i, std::move(samples));
    }
    return result;
}

SimResult simulate_noise(const ScenarioSpec& spec, Rng& rng) {
    const int n = spec.frames;
    const int count = spec.markers > 0 ? spec.markers : 4;
    std::vector<Curve> curves;
    for (int i = 0; i < count; ++i) {
        const Point3 anchor{-1.2 + 0.8 * i, rng.uniform(-0.2, 0.2),
                            2.0 + rng.uniform(-0.3, 0.3)};
        curves.push_back(Curve::make(rng, anchor, 0.08));
    }
    SimResult result;
    for (int i = 0; i < n; ++i) {
        std::vector<Sample> samples;
        const double seconds = i / spec.rate;
        for (int b = 0; b < count; ++b)
            samples.push_back({b, curves[static_cast<std::size_t>(b)].at(seconds)});
        if (rng.uniform(0.0, 1.0) < 0.15) {
            for (int e = 0; e < spec.noise_extra; ++e)
                samples.push_back({-1,
                                   {rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0),
                                    rng.uniform(1.0, 3.0)}});
        }
        emit(result, rng, i, std::move(samples));
    }
    return result;
}

std::vector<std::vector<Sample>> gesture_section(Rng& rng, int count, int length,
                                                 double rate) {
    std::vector<Curve> curves;
    for (int i = 0; i < count; ++i) {
        const Point3 anchor{-0.8 + 0.8 * i, rng.uniform(-0.3, 0.3),
                            2.0 + rng.uniform(-0.3, 0.3)};
        curves.push_back(Curve::make(rng, anchor, 0.35));
    }
    std::vector<std::vector<Sample>> section;
    for (int i = 0; i < length; ++i) {
        std::vector<Sample> samples;
        for (int b = 0; b < count; ++b)
            samples.push_back({b, curves[static_cast<std::size_t>(b)].at(i / rate)});
        section.push_back(std::move(samples));
    }
    return section;
}

void add_noise(std::vector<std::vector<Sample>>& frames, double level, Rng& rng) {
    if (level <= 0.0) return;
    double lo[3] = {1e300, 1e300, 1e300};
    double hi[3] = {-1e300, -1e300, -1e300};
    for (const auto& frame : frames)
        for (const Sample& s : frame) {
            const double v[3] = {s.pos.x, s.pos.y, s.pos.z};
            for (int a = 0; a < 3; ++a) {
                lo[a] = std::min(lo[a], v[a]);
                hi[a] = std::max(hi[a], v[a]);
            }
        }
    double range = 0.0;
    for (int a = 0; a < 3; ++a) range = std::max(range, hi[a] - lo[a]);
    const double amp = level * range;
    for (auto& frame : frames)
        for (Sample& s : frame) {
            s.pos.x += rng.uniform(-amp, amp);
            s.pos.y += rng.uniform(-amp, amp);
            s.pos.z += rng.uniform(-amp, amp);
        }
}

SimResult simulate_gesture(const ScenarioSpec& spec, Rng& rng) {
    const int count = spec.markers > 0 ? spec.markers : 2;
    auto section = gesture_section(rng, count, spec.frames, spec.rate);
    add_noise(section, spec.noise_level, rng);
    SimResult result;
    for (int i = 0; i < spec.frames; ++i)
        emit(result, rng, i, std::move(section[static_cast<std::size_t>(i)]), i);
    return result;
}

SimResult simulate_concat(const ScenarioSpec& spec, Rng& rng) {
    const int count = spec.markers > 0 ? spec.markers : 2;
    const int per_section = std::max(spec.frames / spec.gestures, 2);

    std::vector<std::vector<Sample>> stored;
    std::vector<std::pair<int, int>> bounds;  // [begin, end) per section
    for (int g = 0; g < spec.gestures; ++g) {
        auto section = gesture_section(rng, count, per_section, spec.rate);
        bounds.emplace_back(static_cast<int>(stored.size()),
                            static_cast<int>(stored.size() + section.size()));
        for (auto& frame : section) stored.push_back(std::move(frame));
    }

    // Warped replay of one stored section, after the concatenation.
    const auto [rb, re] = bounds[static_cast<std::size_t>(spec.repeat_of)];
    std::vector<std::vector<Sample>> replay;
    std::vector<std::int64_t> replay_src;
    for (int i = 0;; ++i) {
        const int src = rb + static_cast<int>(std::lround(i * spec.warp));
        if (src >= re) break;
        replay.push_back(stored[static_cast<std::size_t>(src)]);
        replay_src.push_back(src);
    }
    add_noise(replay, spec.noise_level, rng);

    SimResult result;
    std::int64_t t = 0;
    for (std::size_t i = 0; i < stored.size(); ++i, ++t)
        emit(result, rng, t, std::move(stored[i]), static_cast<std::int64_t>(i));
    result.query_begin = t;
    for (std::size_t i = 0; i < replay.size(); ++i, ++t)
        emit(result, rng, t, std::move(replay[i]), replay_src[i]);
    return result;
}

}  // namespace

SimResult simulate(const ScenarioSpec& spec) {
    spec.validate();
    Rng rng(spec.seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    switch (spec.kind) {
        case ScenarioSpec::Kind::cross: return simulate_cross(spec, rng);
        case ScenarioSpec::Kind::occlude: return simulate_occlusion(spec, rng, false);
        case ScenarioSpec::Kind::rebirth: return simulate_occlusion(spec, rng, true);
        case ScenarioSpec::Kind::noise: return simulate_noise(spec, rng);
        case ScenarioSpec::Kind::gesture: return simulate_gesture(spec, rng);
        case ScenarioSpec::Kind::concat: return simulate_concat(spec, rng);
    }
    throw input_error("scenario: unknown kind");
}

}  // namespace ag
