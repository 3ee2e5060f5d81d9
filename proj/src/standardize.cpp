#include "fairfold/standardize.hpp"

#include <cmath>

namespace fairfold {

namespace {
constexpr double kStddevFloor = 1e-12;
}

Standardizer Standardizer::fit(const Dataset& data, std::span<const std::size_t> rows) {
    if (rows.empty()) raise(Errc::EmptyRowSet, "standardizer needs at least one row");
    const std::size_t d = data.cols();
    const double n = static_cast<double>(rows.size());

    Standardizer s;
    s.means_.assign(d, 0.0);
    s.stddevs_.assign(d, 0.0);
    for (const std::size_t id : rows) {
        const auto row = data.row(id);
        for (std::size_t j = 0; j < d; ++j) s.means_[j] += row[j];
    }
    for (std::size_t j = 0; j < d; ++j) s.means_[j] /= n;
    for (const std::size_t id : rows) {
        const auto row = data.row(id);
        for (std::size_t j = 0; j < d; ++j) {
            const double delta = row[j] - s.means_[j];
            s.stddevs_[j] += delta * delta;
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        s.stddevs_[j] = std::sqrt(s.stddevs_[j] / n);
        if (s.stddevs_[j] < kStddevFloor) s.stddevs_[j] = kStddevFloor;
    }
    return s;
}

Dataset Standardizer::apply(const Dataset& data) const {
    if (data.cols() != means_.size()) {
        raise(Errc::DimensionMismatch, "standardizer fitted on a different column count");
    }
    std::vector<double> transformed;
    transformed.reserve(data.rows() * data.cols());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto row = data.row(i);
        for (std::size_t j = 0; j < data.cols(); ++j) {
            transformed.push_back((row[j] - means_[j]) / stddevs_[j]);
        }
    }
    return data.with_features(std::move(transformed));
}

Dataset Standardizer::inverse(const Dataset& data) const {
    if (data.cols() != means_.size()) {
        raise(Errc::DimensionMismatch, "standardizer fitted on a different column count");
    }
    std::vector<double> restored;
    restored.reserve(data.rows() * data.cols());
    for (std::size_t i = 0; i < data.rows(); ++i) {
        const auto row = data.row(i);
        for (std::size_t j = 0; j < data.cols(); ++j) {
            restored.push_back(row[j] * stddevs_[j] + means_[j]);
        }
    }
    return data.with_features(std::move(restored));
}

}  // namespace fairfold
