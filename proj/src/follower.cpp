#include "ag/follower.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace ag {

Follower::Follower(const Oracle& oracle, std::span<const double> first)
    : oracle_(&oracle) {
    if (oracle.size() == 0)
        throw input_error("follower: oracle is empty");
    check_dim(first);

    const auto& clusters = oracle.clusters();
    path_.resize(clusters.size());
    cost_.resize(clusters.size());
    for (std::size_t k = 0; k < clusters.size(); ++k) {
        double best_d2 = std::numeric_limits<double>::infinity();
        int best_state = 0;
        for (int state : clusters[k]) {
            const double d2 = squared_distance(oracle.frame(state), first);
            if (d2 < best_d2) {
                best_d2 = d2;
                best_state = state;  // clusters are ascending, first min wins
            }
        }
        path_[k] = best_state;
        cost_[k] = std::sqrt(best_d2);
    }
    frames_seen_ = 1;
    recompute_best();
}

void Follower::check_dim(std::span<const double> v) const {
    if (v.size() != oracle_->dim())
        throw input_error("follower: observation dimension " +
                          std::to_string(v.size()) + " does not match oracle " +
                          std::to_string(oracle_->dim()));
}

void Follower::recompute_best() {
    best_ = 0;
    for (std::size_t k = 1; k < cost_.size(); ++k)
        if (cost_[k] < cost_[static_cast<std::size_t>(best_)])
            best_ = static_cast<int>(k);
}

int Follower::step(std::span<const double> v) {
    check_dim(v);
    const auto& clusters = oracle_->clusters();
    for (std::size_t k = 0; k < path_.size(); ++k) {
        const int here = path_[k];
        // Labels reachable by one forward link, plus the current label.
        std::set<int> reachable{oracle_->label(here)};
        for (const OracleLink& link : oracle_->links(here))
            reachable.insert(link.label);

        double best_d2 = std::numeric_limits<double>::infinity();
        int best_state = 0;
        for (int lab : reachable) {
            for (int state : clusters[static_cast<std::size_t>(lab)]) {
                const double d2 = squared_distance(oracle_->frame(state), v);
                if (d2 < best_d2 || (d2 == best_d2 && state < best_state)) {
                    best_d2 = d2;
                    best_state = state;
                }
            }
        }
        path_[k] = best_state;
        cost_[k] += std::sqrt(best_d2);
    }
    ++frames_seen_;
    recompute_best();
    return best_state();
}

void MappingConfig::validate() const {
    std::set<std::string> names;
    for (const auto& [label, event] : categorical) {
        if (label < 0) throw input_error("mapping: negative cluster label");
        if (event.empty()) throw input_error("mapping: empty event name");
        if (!names.insert(event).second)
            throw input_error("mapping: duplicate event name '" + event + "'");
    }
    for (const Span& s : spans) {
        if (s.name.empty()) throw input_error("mapping: empty timeline name");
        if (s.start < 1 || s.end < s.start)
            throw input_error("mapping: span '" + s.name +
                              "' must satisfy 1 <= start <= end");
    }
}

std::optional<std::string> map_categorical(const Follower& follower,
                                           const MappingConfig& config) {
    const int label = follower.oracle().label(follower.best_state());
    const auto it = config.categorical.find(label);
    if (it == config.categorical.end()) return std::nullopt;
    return it->second;
}

std::optional<ScrubPosition> map_temporal(const Follower& follower,
                                          const MappingConfig& config) {
    const int state = follower.best_state();
    for (const MappingConfig::Span& s : config.spans) {
        if (state < s.start || state > s.end) continue;
        double position = 0.0;
        if (s.end > s.start) {
            position = static_cast<double>(state - s.start) /
                       static_cast<double>(s.end - s.start);
            position = std::clamp(position, 0.0, 1.0);
        }
        return ScrubPosition{s.name, position};
    }
    return std::nullopt;
}

std::vector<RepeatedSegment> repeated_segments(const Oracle& oracle,
                                               int min_length) {
    std::vector<RepeatedSegment> segments;
    const int T = oracle.size();
    for (int t = 1; t <= T; ++t) {
        const int len = oracle.repeated_suffix_length(t);
        if (len < min_length) continue;
        // Keep only stretches that stop growing at t.
        if (t < T && oracle.repeated_suffix_length(t + 1) == len + 1) continue;
        const int match_end = oracle.suffix(t);
        segments.push_back(
            {t - len + 1, t, match_end - len + 1, match_end, len});
    }
    return segments;
}

}  // namespace ag
