#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fairfold/errors.hpp"

namespace fairfold {

enum class Provenance : std::uint8_t { Original, Synthetic };

/// Lineage of one row. Synthetic rows remember the rows they were built
/// from: parent_a is the seed row, parent_b the interpolation partner (absent
/// for plain copies and cluster centroids). lambda is the signed coefficient
/// in  x = a + lambda * (b - a); plain copies store lambda = 0. Interpolating
/// methods keep lambda in [0, 1]; bounded extrapolation may reach down to
/// -0.5. Parent ids always refer to rows of the dataset the resampler
/// consumed.
struct RowOrigin {
    Provenance tag = Provenance::Original;
    std::size_t parent_a = 0;
    std::optional<std::size_t> parent_b{};
    double lambda = 0.0;

    static RowOrigin original() { return RowOrigin{}; }
    static RowOrigin synthetic(std::size_t parent_a, std::optional<std::size_t> parent_b,
                               double lambda) {
        return RowOrigin{Provenance::Synthetic, parent_a, parent_b, lambda};
    }
    bool is_original() const noexcept { return tag == Provenance::Original; }
};

/// In-memory table of real-valued features with binary labels and per-row
/// lineage. Immutable once built up; all transforming operations return a
/// new Dataset.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::size_t n_features, std::vector<std::string> feature_names,
            std::string positive_label);

    void append_row(std::span<const double> values, bool positive,
                    RowOrigin origin = RowOrigin::original());

    std::size_t rows() const noexcept { return labels_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * cols_, cols_};
    }
    double at(std::size_t i, std::size_t j) const { return features_[i * cols_ + j]; }

    bool positive(std::size_t i) const { return labels_[i] != 0; }
    const RowOrigin& origin(std::size_t i) const { return origins_[i]; }

    const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
    const std::string& positive_label() const noexcept { return positive_label_; }

    std::size_t positives() const noexcept { return n_positive_; }
    std::size_t negatives() const noexcept { return rows() - n_positive_; }
    bool both_classes_present() const noexcept {
        return n_positive_ > 0 && n_positive_ < rows();
    }
    bool all_original() const;

    /// Row ids carrying the given label, ascending.
    std::vector<std::size_t> rows_with_label(bool positive) const;

    /// Minority is the less frequent class; a tie counts the positive class
    /// as minority.
    bool minority_is_positive() const;
    std::vector<std::size_t> minority_rows() const { return rows_with_label(minority_is_positive()); }
    std::vector<std::size_t> majority_rows() const { return rows_with_label(!minority_is_positive()); }

    /// New dataset holding the given rows in the given order. Provenance is
    /// copied verbatim; parent ids keep referring to this dataset's row ids.
    Dataset subset(std::span<const std::size_t> row_ids) const;

    /// Same rows and labels with the feature block replaced (used by the
    /// standardizer). Must have identical dimensions.
    Dataset with_features(std::vector<double> features) const;

private:
    std::size_t cols_ = 0;
    std::vector<double> features_;  // row-major rows() x cols()
    std::vector<std::uint8_t> labels_;
    std::vector<RowOrigin> origins_;
    std::vector<std::string> feature_names_;
    std::string positive_label_;
    std::size_t n_positive_ = 0;
};

struct ImbalanceRate {
    double value = 0.0;  ///< n_minority / n_majority, in (0, 1]
    std::size_t n_minority = 0;
    std::size_t n_majority = 0;
};

/// Minority count divided by majority count. Throws SingleClass when only
/// one class is present.
ImbalanceRate imbalance_rate(const Dataset& data);

}  // namespace fairfold
