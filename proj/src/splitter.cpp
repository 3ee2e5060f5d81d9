#include "fairfold/splitter.hpp"

#include <algorithm>
#include <ostream>

namespace fairfold {

FoldPlan::FoldPlan(std::size_t k, std::vector<std::size_t> assignments)
    : k_(k), assignments_(std::move(assignments)), by_fold_(k) {
    for (std::size_t row = 0; row < assignments_.size(); ++row) {
        const std::size_t fold = assignments_[row];
        if (fold >= k_) raise(Errc::FoldOutOfRange, "assignment exceeds fold count");
        by_fold_[fold].push_back(row);
    }
    for (auto& rows : by_fold_) std::sort(rows.begin(), rows.end());
}

std::span<const std::size_t> FoldPlan::fold_rows(std::size_t fold) const {
    if (fold >= k_) raise(Errc::FoldOutOfRange, "fold index " + std::to_string(fold) +
                                                    " with k=" + std::to_string(k_));
    return by_fold_[fold];
}

void FoldPlan::write_csv(std::ostream& out) const {
    out << "row_id,fold\n";
    for (std::size_t row = 0; row < assignments_.size(); ++row) {
        out << row << ',' << assignments_[row] << '\n';
    }
}

FoldPlan stratified_kfold(const Dataset& data, std::size_t k, SeededRng& rng) {
    if (k < 2) raise(Errc::InvalidValue, "fold count must be at least 2");
    std::vector<std::size_t> assignments(data.rows(), 0);

    // Positive class first, then negative: fixed order so the rng stream is
    // consumed identically for identical inputs.
    for (const bool positive : {true, false}) {
        auto ids = data.rows_with_label(positive);
        if (ids.size() < k) {
            raise(Errc::TooFewClassMembers,
                  std::string("class '") + (positive ? "positive" : "negative") + "' has " +
                      std::to_string(ids.size()) + " rows, need at least " + std::to_string(k));
        }
        rng.shuffle(ids);
        for (std::size_t i = 0; i < ids.size(); ++i) assignments[ids[i]] = i % k;
    }
    return FoldPlan(k, std::move(assignments));
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> train_test_split_of_fold(
    const FoldPlan& plan, std::size_t fold) {
    const auto test_span = plan.fold_rows(fold);  // validates the index
    std::vector<std::size_t> test(test_span.begin(), test_span.end());
    std::vector<std::size_t> train;
    train.reserve(plan.rows() - test.size());
    for (std::size_t row = 0; row < plan.rows(); ++row) {
        if (plan.fold_of(row) != fold) train.push_back(row);
    }
    return {std::move(train), std::move(test)};
}

}  // namespace fairfold
