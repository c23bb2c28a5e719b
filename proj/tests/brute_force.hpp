// Independent reference implementations used only by tests. Each is the
// dumbest correct algorithm available so results can anchor the fast
// production paths.
#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "ag/assignment.hpp"

namespace brute {

// Exhaustive minimum-cost matching. Enumerates every injective mapping of
// the smaller side into the larger; feasible for min(n, m) <= 7-ish.
inline ag::AssignmentResult min_assignment(const ag::CostMatrix& cost) {
    const std::size_t n = cost.rows();
    const std::size_t m = cost.cols();
    ag::AssignmentResult best;
    if (n == 0 || m == 0) return best;

    const bool transposed = n > m;
    const std::size_t rows = transposed ? m : n;
    const std::size_t cols = transposed ? n : m;
    auto at = [&](std::size_t r, std::size_t c) {
        return transposed ? cost.at(c, r) : cost.at(r, c);
    };

    std::vector<std::size_t> chosen(rows, 0);
    std::vector<bool> used(cols, false);
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_choice;

    auto recurse = [&](auto&& self, std::size_t row, double acc) -> void {
        if (row == rows) {
            if (acc < best_cost) {
                best_cost = acc;
                best_choice = chosen;
            }
            return;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (used[c]) continue;
            used[c] = true;
            chosen[row] = c;
            self(self, row + 1, acc + at(row, c));
            used[c] = false;
        }
    };
    recurse(recurse, 0, 0.0);

    for (std::size_t r = 0; r < rows; ++r) {
        if (transposed)
            best.pairs.emplace_back(best_choice[r], r);
        else
            best.pairs.emplace_back(r, best_choice[r]);
    }
    std::sort(best.pairs.begin(), best.pairs.end());
    for (const auto& [r, c] : best.pairs) best.total_cost += cost.at(r, c);
    return best;
}

// Length of the longest suffix of symbols[0..t-1] (1-based prefix length
// t) that also occurs ending at an earlier position. Quadratic scan.
inline int longest_repeated_suffix(const std::vector<int>& symbols, int t) {
    int best = 0;
    for (int len = 1; len < t; ++len) {
        bool found = false;
        for (int end = len; end < t && !found; ++end) {
            bool equal = true;
            for (int i = 0; i < len && equal; ++i)
                equal = symbols[static_cast<std::size_t>(end - 1 - i)] ==
                        symbols[static_cast<std::size_t>(t - 1 - i)];
            found = equal;
        }
        if (found) best = len;
    }
    return best;
}

// Textbook incremental factor-oracle over a symbol string. Used to check
// the production construction when the similarity threshold reduces to
// symbol equality.
struct FactorOracle {
    std::vector<int> sfx;                          // sfx[0] = -1
    std::vector<std::map<int, int>> delta;         // delta[state][symbol] = state

    explicit FactorOracle(const std::vector<int>& symbols) {
        sfx.push_back(-1);
        delta.emplace_back();
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            const int sigma = symbols[i];
            const int state = static_cast<int>(i) + 1;
            delta.emplace_back();
            delta[static_cast<std::size_t>(state - 1)][sigma] = state;
            int k = sfx[static_cast<std::size_t>(state - 1)];
            while (k != -1 && !delta[static_cast<std::size_t>(k)].count(sigma)) {
                delta[static_cast<std::size_t>(k)][sigma] = state;
                k = sfx[static_cast<std::size_t>(k)];
            }
            sfx.push_back(k == -1 ? 0 : delta[static_cast<std::size_t>(k)][sigma]);
        }
    }

    // End state of reading `word` from the root, or -1 when stuck.
    int read(const std::vector<int>& word) const {
        int state = 0;
        for (int symbol : word) {
            const auto& out = delta[static_cast<std::size_t>(state)];
            const auto it = out.find(symbol);
            if (it == out.end()) return -1;
            state = it->second;
        }
        return state;
    }
};

}  // namespace brute
