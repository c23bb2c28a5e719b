#include "ag/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ag {

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

void accumulate(PositionErrorStats& stats, double err) {
    stats.mean = (stats.mean * static_cast<double>(stats.count) + err) /
                 static_cast<double>(stats.count + 1);
    stats.max = std::max(stats.max, err);
    ++stats.count;
}

}  // namespace

std::optional<double> spearman(const std::vector<double>& a,
                               const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) return std::nullopt;
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - ma;
        const double db = rb[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) return std::nullopt;
    return cov / std::sqrt(va * vb);
}

TrackingMetrics eval_tracking(const std::vector<FrameEvents>& output,
                              const std::vector<TruthFrame>& truth) {
    if (output.size() != truth.size())
        throw input_error("eval: output has " + std::to_string(output.size()) +
                          " frames but truth has " + std::to_string(truth.size()));

    TrackingMetrics metrics;
    metrics.frames = static_cast<std::int64_t>(output.size());
    std::map<int, int> last_true_id;  // blob id -> true id at last appearance

    for (std::size_t f = 0; f < output.size(); ++f) {
        const FrameEvents& out = output[f];
        const TruthFrame& tr = truth[f];
        if (out.t != tr.t)
            throw input_error("eval: frame t=" + std::to_string(out.t) +
                              " does not align with truth t=" + std::to_string(tr.t));
        for (const TrackEvent& event : out.events) {
            switch (event.action) {
                case TrackAction::birth: ++metrics.births; break;
                case TrackAction::death: ++metrics.deaths; break;
                case TrackAction::kill: ++metrics.kills; break;
                case TrackAction::living: break;
            }
            if (event.action != TrackAction::living &&
                event.action != TrackAction::birth)
                continue;
            if (tr.markers.empty())
                throw input_error("eval: event at t=" + std::to_string(out.t) +
                                  " but truth frame has no markers");
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_j = 0;
            for (std::size_t j = 0; j < tr.markers.size(); ++j) {
                const double d = distance(*event.pos, tr.markers[j]);
                if (d < best) {
                    best = d;
                    best_j = j;
                }
            }
            const int true_id = tr.ids[best_j];
            accumulate(metrics.position_error, best);
            accumulate(metrics.per_blob[event.id], best);
            const auto it = last_true_id.find(event.id);
            if (it != last_true_id.end() && it->second != true_id)
                ++metrics.identity_switches;
            last_true_id[event.id] = true_id;
        }
    }
    return metrics;
}

TrackingMetrics eval_following(const std::vector<FollowRecord>& output,
                               const std::vector<TruthFrame>& truth) {
    if (output.size() != truth.size())
        throw input_error("eval: output has " + std::to_string(output.size()) +
                          " records but truth has " + std::to_string(truth.size()));
    TrackingMetrics metrics;
    metrics.frames = static_cast<std::int64_t>(output.size());
    std::vector<double> matched, expected;
    for (std::size_t f = 0; f < output.size(); ++f) {
        if (output[f].t != truth[f].t)
            throw input_error("eval: record t=" + std::to_string(output[f].t) +
                              " does not align with truth t=" +
                              std::to_string(truth[f].t));
        if (!truth[f].src) continue;
        matched.push_back(static_cast<double>(output[f].state));
        expected.push_back(static_cast<double>(*truth[f].src));
    }
    metrics.index_correlation = spearman(matched, expected);
    return metrics;
}

}  // namespace ag
