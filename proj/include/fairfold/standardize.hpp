#pragma once

#include <span>
#include <vector>

#include "fairfold/dataset.hpp"

namespace fairfold {

/// Columnwise z-scoring. Statistics are fitted on an explicit row subset
/// (the training rows) and then applied to any dataset of the same width,
/// which is what keeps test folds free of training-time information.
class Standardizer {
public:
    /// Population mean and stddev per column over the given rows. The
    /// stddev is floored at 1e-12 so constant columns transform to zeros.
    static Standardizer fit(const Dataset& data, std::span<const std::size_t> rows);

    /// (x - mean) / stddev per column. Labels and provenance pass through.
    Dataset apply(const Dataset& data) const;

    /// x * stddev + mean; exact inverse for non-floored columns.
    Dataset inverse(const Dataset& data) const;

    std::span<const double> means() const noexcept { return means_; }
    std::span<const double> stddevs() const noexcept { return stddevs_; }

private:
    std::vector<double> means_;
    std::vector<double> stddevs_;
};

}  // namespace fairfold
