#pragma once

#include <span>
#include <vector>

#include "fairfold/dataset.hpp"

namespace fairfold {

/// Exact Euclidean nearest-neighbor lookup over a row subset of a dataset.
/// Neighbors come back in nondecreasing distance; equal distances break
/// toward the lower row id. Read-only view: the dataset must outlive the
/// index.
class NeighborIndex {
public:
    NeighborIndex(const Dataset& data, std::vector<std::size_t> rows);

    std::size_t size() const noexcept { return rows_.size(); }
    std::span<const std::size_t> rows() const noexcept { return rows_; }

    /// k nearest indexed rows to an arbitrary point.
    std::vector<std::size_t> query(std::span<const double> point, std::size_t k) const;

    /// k nearest indexed rows to an indexed row, the row itself excluded.
    std::vector<std::size_t> query_row(std::size_t row_id, std::size_t k) const;

private:
    std::vector<std::size_t> nearest(std::span<const double> point, std::size_t k,
                                     std::size_t exclude_id, bool has_exclude) const;

    const Dataset* data_;
    std::vector<std::size_t> rows_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace fairfold
