#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ag/core.hpp"

namespace ag {

// A forward transition. Internal links chain state s to s+1; external
// links jump ahead to a later state. Both carry the target's label.
struct OracleLink {
    int target = 0;
    int label = 0;
    bool external = false;

    friend bool operator==(const OracleLink&, const OracleLink&) = default;
};

// Incremental suffix-link automaton over a multivariate time series.
// States are 1..T plus a virtual root 0. Two frames are considered
// similar when their Euclidean distance is <= theta; each state gets the
// label of its suffix-link target, or a fresh label when the suffix walk
// exhausts. Construction is single-writer; a finished oracle is immutable
// and safe to read from any number of threads.
class Oracle {
public:
    static constexpr int kNoSuffix = -1;

    explicit Oracle(double theta);

    // Appends one frame, wiring forward and suffix links. Returns the new
    // state index. All frames must share one dimensionality.
    int add_frame(std::span<const double> v);

    int size() const { return static_cast<int>(labels_.size()); }          // T
    int num_clusters() const { return static_cast<int>(clusters_.size()); }  // K
    double theta() const { return theta_; }
    std::size_t dim() const { return dim_; }

    // state in 1..T
    std::span<const double> frame(int state) const;
    int label(int state) const { return labels_[check_state(state)]; }
    // sfx[state]: 0..state-1, or kNoSuffix for the root (state 0).
    int suffix(int state) const;
    // forward links out of state; state 0 is the root.
    std::span<const OracleLink> links(int state) const;

    // Per-label state lists, ascending. clusters()[k] is cluster b_k.
    const std::vector<std::vector<int>>& clusters() const { return clusters_; }

    // Length of the common symbol suffix shared by pref(state) and
    // pref(sfx[state]); 0 for states linked to the root.
    int repeated_suffix_length(int state) const;

    friend bool operator==(const Oracle&, const Oracle&);

private:
    int check_state(int state) const;

    double theta_ = 0.0;
    std::size_t dim_ = 0;
    std::vector<double> frames_;               // flat, frame t at (t-1)*dim_
    std::vector<int> labels_;                  // labels_[t-1] = q_t
    std::vector<int> sfx_;                     // sfx_[t] for t in 0..T
    std::vector<std::vector<OracleLink>> forward_;  // forward_[s] for s in 0..T
    std::vector<std::vector<int>> clusters_;
};

// Threshold sweep: builds one oracle per candidate and scores the repeat
// structure as the number of states whose suffix link lands off the root.
struct ThresholdSweep {
    double best_theta = 0.0;
    std::vector<double> candidates;
    std::vector<long> scores;  // aligned with candidates
};

ThresholdSweep select_threshold(const std::vector<std::vector<double>>& frames,
                                std::vector<double> candidates);

// Model document (JSON). Round-trips the full link structure exactly.
void save_model(const Oracle& oracle, std::ostream& out);
Oracle load_model(std::istream& in);

}  // namespace ag
