#include "fairfold/dataset.hpp"

#include <algorithm>
#include <utility>

namespace fairfold {

Dataset::Dataset(std::size_t n_features, std::vector<std::string> feature_names,
                 std::string positive_label)
    : cols_(n_features),
      feature_names_(std::move(feature_names)),
      positive_label_(std::move(positive_label)) {
    if (!feature_names_.empty() && feature_names_.size() != cols_) {
        raise(Errc::DimensionMismatch, "feature name count does not match column count");
    }
}

void Dataset::append_row(std::span<const double> values, bool positive, RowOrigin origin) {
    if (values.size() != cols_) {
        raise(Errc::DimensionMismatch, "row width does not match dataset columns");
    }
    features_.insert(features_.end(), values.begin(), values.end());
    labels_.push_back(positive ? 1 : 0);
    origins_.push_back(origin);
    if (positive) ++n_positive_;
}

bool Dataset::all_original() const {
    return std::all_of(origins_.begin(), origins_.end(),
                       [](const RowOrigin& o) { return o.is_original(); });
}

std::vector<std::size_t> Dataset::rows_with_label(bool positive) const {
    std::vector<std::size_t> ids;
    ids.reserve(positive ? positives() : negatives());
    for (std::size_t i = 0; i < rows(); ++i) {
        if (this->positive(i) == positive) ids.push_back(i);
    }
    return ids;
}

bool Dataset::minority_is_positive() const {
    return positives() <= negatives();
}

Dataset Dataset::subset(std::span<const std::size_t> row_ids) const {
    Dataset out(cols_, feature_names_, positive_label_);
    for (const std::size_t id : row_ids) {
        if (id >= rows()) raise(Errc::InvalidValue, "subset row id out of range");
        out.append_row(row(id), positive(id), origin(id));
    }
    return out;
}

Dataset Dataset::with_features(std::vector<double> features) const {
    if (features.size() != features_.size()) {
        raise(Errc::DimensionMismatch, "replacement feature block has wrong size");
    }
    Dataset out = *this;
    out.features_ = std::move(features);
    return out;
}

ImbalanceRate imbalance_rate(const Dataset& data) {
    if (!data.both_classes_present()) {
        raise(Errc::SingleClass, "imbalance rate needs both classes present");
    }
    const std::size_t pos = data.positives();
    const std::size_t neg = data.negatives();
    ImbalanceRate rate;
    rate.n_minority = std::min(pos, neg);
    rate.n_majority = std::max(pos, neg);
    rate.value = static_cast<double>(rate.n_minority) / static_cast<double>(rate.n_majority);
    return rate;
}

}  // namespace fairfold
