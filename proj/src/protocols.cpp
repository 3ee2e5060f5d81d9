#include "fairfold/protocols.hpp"

#include <numeric>

#include "fairfold/splitter.hpp"
#include "fairfold/standardize.hpp"

namespace fairfold {

namespace {

double mean_of(const std::vector<double>& values) {
    return std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
}

void require_protocol_input(const Dataset& data) {
    if (data.rows() < 2) raise(Errc::InvalidValue, "protocol input needs at least two rows");
    if (!data.both_classes_present()) {
        raise(Errc::SingleClass, "protocol input needs both classes");
    }
    if (!data.all_original()) {
        raise(Errc::InvalidValue, "protocol input must be original rows only");
    }
}

}  // namespace

const char* protocol_name(Protocol protocol) {
    return protocol == Protocol::Efidl ? "efidl" : "traditional";
}

const char* protocol_label(Protocol protocol) {
    return protocol == Protocol::Efidl ? "EFIDL" : "TRA";
}

CellResult run_efidl(const Dataset& data, ResamplerKind resampler, ClassifierKind classifier,
                     const RunOptions& options, std::uint64_t seed, const CellCoords& coords) {
    require_protocol_input(data);

    SeededRng plan_rng = rng_for_cell(seed, coords, kStreamFoldPlan);
    const FoldPlan plan = stratified_kfold(data, options.k, plan_rng);

    CellResult cell;
    std::vector<std::size_t> times_scored(data.rows(), 0);
    const FitOptions fit_options{options.tree_splitter};

    for (std::size_t fold = 0; fold < options.k; ++fold) {
        const auto [train_ids, test_ids] = train_test_split_of_fold(plan, fold);
        SeededRng fold_rng = rng_for_cell(seed, coords, static_cast<std::uint32_t>(fold));

        Dataset working = data;
        if (options.standardize) {
            working = Standardizer::fit(data, train_ids).apply(data);
        }
        const Dataset train_set = working.subset(train_ids);
        const ResampleOutput balanced =
            resample(resampler, train_set, fold_rng, options.smote_neighbors);
        const auto model = fit(classifier, balanced.data, fold_rng, fit_options);

        ScoredPredictions fold_predictions;
        fold_predictions.fold = fold;
        for (const std::size_t id : test_ids) {
            if (!working.origin(id).is_original()) {
                raise(Errc::Internal, "a non-original row reached an evaluation fold");
            }
            ++times_scored[id];
            fold_predictions.pairs.push_back(
                {model->score(working.row(id)), working.positive(id)});
        }
        cell.fold_auc.push_back(auc(fold_predictions));
        cell.fold_f1.push_back(f1_at_half(fold_predictions));
        cell.pooled.pairs.insert(cell.pooled.pairs.end(), fold_predictions.pairs.begin(),
                                 fold_predictions.pairs.end());
    }

    for (const std::size_t count : times_scored) {
        if (count != 1) raise(Errc::Internal, "folds did not score every row exactly once");
    }
    cell.mean_auc = mean_of(cell.fold_auc);
    cell.mean_f1 = mean_of(cell.fold_f1);
    return cell;
}

CellResult run_traditional(const Dataset& data, ResamplerKind resampler,
                           ClassifierKind classifier, const RunOptions& options,
                           std::uint64_t seed, const CellCoords& coords) {
    if (resampler == ResamplerKind::None) {
        // No augmentation means no leak either way; both protocols are the
        // same computation and must report the same numbers.
        return run_efidl(data, resampler, classifier, options, seed, coords);
    }
    require_protocol_input(data);

    Dataset working = data;
    if (options.standardize) {
        std::vector<std::size_t> all(data.rows());
        std::iota(all.begin(), all.end(), std::size_t{0});
        working = Standardizer::fit(data, all).apply(data);
    }
    SeededRng augment_rng = rng_for_cell(seed, coords, kStreamAugment);
    const ResampleOutput balanced =
        resample(resampler, working, augment_rng, options.smote_neighbors);

    SeededRng plan_rng = rng_for_cell(seed, coords, kStreamFoldPlan);
    const FoldPlan plan = stratified_kfold(balanced.data, options.k, plan_rng);

    CellResult cell;
    const FitOptions fit_options{options.tree_splitter};
    for (std::size_t fold = 0; fold < options.k; ++fold) {
        const auto [train_ids, test_ids] = train_test_split_of_fold(plan, fold);
        SeededRng fold_rng = rng_for_cell(seed, coords, static_cast<std::uint32_t>(fold));

        const Dataset train_set = balanced.data.subset(train_ids);
        const auto model = fit(classifier, train_set, fold_rng, fit_options);

        ScoredPredictions fold_predictions;
        fold_predictions.fold = fold;
        for (const std::size_t id : test_ids) {
            fold_predictions.pairs.push_back(
                {model->score(balanced.data.row(id)), balanced.data.positive(id)});
        }
        cell.fold_auc.push_back(auc(fold_predictions));
        cell.fold_f1.push_back(f1_at_half(fold_predictions));
        cell.pooled.pairs.insert(cell.pooled.pairs.end(), fold_predictions.pairs.begin(),
                                 fold_predictions.pairs.end());
    }
    cell.mean_auc = mean_of(cell.fold_auc);
    cell.mean_f1 = mean_of(cell.fold_f1);
    return cell;
}

double percent_diff(double augmented, double before) {
    if (!(before > 0.0)) {
        raise(Errc::NonpositiveBaseline, "percent difference needs a positive baseline");
    }
    return 100.0 * (augmented - before) / before;
}

}  // namespace fairfold
