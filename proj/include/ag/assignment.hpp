#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ag/core.hpp"

namespace ag {

// Dense rectangular cost matrix with nonnegative finite entries.
class CostMatrix {
public:
    CostMatrix() = default;
    CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    // Every entry must be finite and >= 0; throws input_error otherwise.
    void validate() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Minimum-cost matching of size min(rows, cols). total_cost is the sum of
// the matched entries, accumulated in ascending row order.
struct AssignmentResult {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (row, col), rows ascending
    double total_cost = 0.0;
};

// Kuhn-Munkres over a rectangular matrix. Deterministic: scanning order
// prefers low indices, so equal-cost alternatives resolve toward low
// row/col pairs (a constant matrix matches the diagonal).
AssignmentResult solve_assignment(const CostMatrix& cost);

}  // namespace ag
