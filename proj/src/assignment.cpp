#include "ag/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ag {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

void CostMatrix::validate() const {
    for (double v : data_) {
        if (!std::isfinite(v))
            throw input_error("cost matrix entry is not finite");
        if (v < 0.0)
            throw input_error("cost matrix entry is negative");
    }
}

namespace {

// Shortest-augmenting-path Kuhn-Munkres with row/column potentials.
// Requires n <= m. Returns match[row] = col. Columns are scanned in
// ascending order and improvements use strict comparison, so ties fall
// to the lowest index.
std::vector<std::size_t> km_rows_le_cols(std::size_t n, std::size_t m,
                                         auto&& cost) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    // 1-based internally; p[j] = row matched to column j, 0 = free.
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(m + 1, kInf);
        std::vector<bool> used(m + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            double delta = kInf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> match(n, 0);
    for (std::size_t j = 1; j <= m; ++j)
        if (p[j] != 0) match[p[j] - 1] = j - 1;
    return match;
}

}  // namespace

AssignmentResult solve_assignment(const CostMatrix& cost) {
    cost.validate();
    AssignmentResult result;
    const std::size_t n = cost.rows();
    const std::size_t m = cost.cols();
    if (n == 0 || m == 0) return result;

    if (n <= m) {
        auto match = km_rows_le_cols(n, m, [&](std::size_t r, std::size_t c) {
            return cost.at(r, c);
        });
        for (std::size_t r = 0; r < n; ++r)
            result.pairs.emplace_back(r, match[r]);
    } else {
        // Transposed solve; rows of the transposed problem are our columns.
        auto match = km_rows_le_cols(m, n, [&](std::size_t r, std::size_t c) {
            return cost.at(c, r);
        });
        for (std::size_t c = 0; c < m; ++c)
            result.pairs.emplace_back(match[c], c);
        std::sort(result.pairs.begin(), result.pairs.end());
    }
    for (const auto& [r, c] : result.pairs)
        result.total_cost += cost.at(r, c);
    return result;
}

}  // namespace ag
