#pragma once

#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "fairfold/dataset.hpp"
#include "fairfold/rng.hpp"

namespace fairfold {

/// Stratified assignment of every row to exactly one of k folds. Per class,
/// fold sizes differ by at most one.
class FoldPlan {
public:
    FoldPlan(std::size_t k, std::vector<std::size_t> assignments);

    std::size_t k() const noexcept { return k_; }
    std::size_t rows() const noexcept { return assignments_.size(); }
    std::size_t fold_of(std::size_t row) const { return assignments_[row]; }

    /// Row ids of one fold, ascending.
    std::span<const std::size_t> fold_rows(std::size_t fold) const;

    /// Audit dump, one "row_id,fold" line per row.
    void write_csv(std::ostream& out) const;

private:
    std::size_t k_;
    std::vector<std::size_t> assignments_;
    std::vector<std::vector<std::size_t>> by_fold_;
};

/// Shuffles each class independently with rng, then deals the shuffled rows
/// round-robin over folds 0..k-1, so the first (n mod k) folds receive the
/// extra member. Every fold ends up with the dataset's class proportions up
/// to the +-1 integer bound.
FoldPlan stratified_kfold(const Dataset& data, std::size_t k, SeededRng& rng);

/// Test rows are the fold's rows, train rows all others; both ascending.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> train_test_split_of_fold(
    const FoldPlan& plan, std::size_t fold);

}  // namespace fairfold
