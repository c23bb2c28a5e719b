#include "ag/tracker.hpp"

#include <algorithm>

#include "ag/assignment.hpp"

namespace ag {

void TrackerConfig::validate() const {
    if (max_blobs <= 0)
        throw input_error("tracker config: max_blobs must be positive");
    if (!(birth_cost > 0.0) || !std::isfinite(birth_cost))
        throw input_error("tracker config: birth_cost must be positive and finite");
    if (!(bias > 0.0) || bias > 1.0)
        throw input_error("tracker config: bias must be in (0, 1]");
}

const char* to_string(TrackAction a) {
    switch (a) {
        case TrackAction::living: return "living";
        case TrackAction::death: return "death";
        case TrackAction::birth: return "birth";
        case TrackAction::kill: return "kill";
    }
    return "?";
}

Registry::Registry(const TrackerConfig& config) : config_(config) {
    config_.validate();
    blobs_.resize(static_cast<std::size_t>(config_.max_blobs));
    for (std::size_t i = 0; i < blobs_.size(); ++i)
        blobs_[i].id = static_cast<int>(i);
}

namespace {

struct Match {
    int blob_id;
    std::size_t marker;
};

// KM over a blob subset x marker subset. Rows follow the given blob order
// (ascending id), so equal-cost alternatives resolve to the lowest id.
std::pair<std::vector<Match>, double> match_blobs(
    const std::vector<Blob>& blobs, const std::vector<int>& blob_ids,
    const std::vector<Point3>& markers, const std::vector<std::size_t>& marker_ids,
    double birth_cost) {
    CostMatrix cost(blob_ids.size(), marker_ids.size());
    for (std::size_t r = 0; r < blob_ids.size(); ++r) {
        const Blob& b = blobs[static_cast<std::size_t>(blob_ids[r])];
        for (std::size_t c = 0; c < marker_ids.size(); ++c) {
            cost.at(r, c) = b.last_pos ? distance(*b.last_pos, markers[marker_ids[c]])
                                       : birth_cost;
        }
    }
    auto result = solve_assignment(cost);
    std::vector<Match> matches;
    matches.reserve(result.pairs.size());
    for (const auto& [r, c] : result.pairs)
        matches.push_back({blob_ids[r], marker_ids[c]});
    return {std::move(matches), result.total_cost};
}

}  // namespace

TrackUpdate Registry::step(const MarkerFrame& frame) {
    if (any_frame_ && frame.t <= last_t_)
        throw input_error("tracker step: frame index " + std::to_string(frame.t) +
                          " is not greater than " + std::to_string(last_t_));
    for (const Point3& p : frame.markers)
        if (!p.finite())
            throw input_error("tracker step: non-finite marker coordinate");

    const std::size_t m = frame.markers.size();
    const std::size_t max_blobs = blobs_.size();

    std::vector<int> alive, others, all;
    for (const Blob& b : blobs_) {
        all.push_back(b.id);
        (b.state == BlobState::alive ? alive : others).push_back(b.id);
    }
    std::vector<std::size_t> all_markers(m);
    for (std::size_t j = 0; j < m; ++j) all_markers[j] = j;

    std::vector<Match> adopted;
    std::vector<std::size_t> killed;

    if (m > max_blobs) {
        // Single global pass: every blob gets a marker, the leftovers are
        // treated as noise.
        auto [matches, cost] = match_blobs(blobs_, all, frame.markers, all_markers,
                                           config_.birth_cost);
        adopted = std::move(matches);
        std::vector<bool> used(m, false);
        for (const Match& mt : adopted) used[mt.marker] = true;
        for (std::size_t j = 0; j < m; ++j)
            if (!used[j]) killed.push_back(j);
    } else if (m <= alive.size()) {
        auto [matches, cost] =
            match_blobs(blobs_, alive, frame.markers, all_markers, config_.birth_cost);
        adopted = std::move(matches);
    } else {
        // More markers than alive blobs: either keep all alive blobs and
        // hand the leftovers to dead/unseen ones (scheme 1), or rematch
        // everything jointly (scheme 2).
        auto [m1a, c1a] =
            match_blobs(blobs_, alive, frame.markers, all_markers, config_.birth_cost);
        std::vector<bool> taken(m, false);
        for (const Match& mt : m1a) taken[mt.marker] = true;
        std::vector<std::size_t> leftovers;
        for (std::size_t j = 0; j < m; ++j)
            if (!taken[j]) leftovers.push_back(j);
        auto [m1b, c1b] =
            match_blobs(blobs_, others, frame.markers, leftovers, config_.birth_cost);
        const double c1 = c1a + c1b;

        auto [m2, c2] =
            match_blobs(blobs_, all, frame.markers, all_markers, config_.birth_cost);

        if (config_.bias * c1 <= c2) {
            adopted = std::move(m1a);
            adopted.insert(adopted.end(), m1b.begin(), m1b.end());
        } else {
            adopted = std::move(m2);
        }
    }

    // Apply the adopted matching to the registry.
    std::vector<std::optional<std::size_t>> marker_of(max_blobs);
    for (const Match& mt : adopted)
        marker_of[static_cast<std::size_t>(mt.blob_id)] = mt.marker;

    TrackUpdate update;
    update.t = frame.t;
    for (Blob& b : blobs_) {
        const auto idx = static_cast<std::size_t>(b.id);
        if (marker_of[idx]) {
            const Point3& pos = frame.markers[*marker_of[idx]];
            const bool was_alive = b.state == BlobState::alive;
            b.state = BlobState::alive;
            b.last_pos = pos;
            b.last_seen_t = frame.t;
            update.events.push_back(
                {b.id, was_alive ? TrackAction::living : TrackAction::birth, pos});
        } else if (b.state == BlobState::alive) {
            b.state = BlobState::dead;  // coordinate stays frozen
            update.events.push_back({b.id, TrackAction::death, std::nullopt});
        }
        // dead/unseen and unmatched: no action
    }
    for (std::size_t j : killed)
        update.events.push_back(
            {static_cast<int>(j), TrackAction::kill, frame.markers[j]});

    last_t_ = frame.t;
    any_frame_ = true;
    update.blobs = blobs_;
    return update;
}

}  // namespace ag
