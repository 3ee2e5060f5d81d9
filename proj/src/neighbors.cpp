#include "fairfold/neighbors.hpp"

#include <algorithm>

namespace fairfold {

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double delta = a[j] - b[j];
        sum += delta * delta;
    }
    return sum;
}

NeighborIndex::NeighborIndex(const Dataset& data, std::vector<std::size_t> rows)
    : data_(&data), rows_(std::move(rows)) {
    if (rows_.empty()) raise(Errc::EmptyRowSet, "neighbor index over an empty row set");
    for (const std::size_t id : rows_) {
        if (id >= data.rows()) raise(Errc::InvalidValue, "indexed row id out of range");
    }
}

std::vector<std::size_t> NeighborIndex::nearest(std::span<const double> point, std::size_t k,
                                                std::size_t exclude_id, bool has_exclude) const {
    if (point.size() != data_->cols()) {
        raise(Errc::DimensionMismatch, "query point width differs from dataset");
    }
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(rows_.size());
    for (const std::size_t id : rows_) {
        if (has_exclude && id == exclude_id) continue;
        ranked.emplace_back(squared_distance(point, data_->row(id)), id);
    }
    if (k > ranked.size()) {
        raise(Errc::KTooLarge, "asked for " + std::to_string(k) + " neighbors from " +
                                   std::to_string(ranked.size()) + " candidates");
    }
    std::sort(ranked.begin(), ranked.end());  // pair order = (distance, row id)
    std::vector<std::size_t> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = ranked[i].second;
    return out;
}

std::vector<std::size_t> NeighborIndex::query(std::span<const double> point,
                                              std::size_t k) const {
    return nearest(point, k, 0, false);
}

std::vector<std::size_t> NeighborIndex::query_row(std::size_t row_id, std::size_t k) const {
    return nearest(data_->row(row_id), k, row_id, true);
}

}  // namespace fairfold
