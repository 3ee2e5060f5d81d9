#pragma once

#include <cstdint>
#include <vector>

#include "fairfold/classifiers.hpp"
#include "fairfold/dataset.hpp"
#include "fairfold/metrics.hpp"
#include "fairfold/resamplers.hpp"
#include "fairfold/rng.hpp"

namespace fairfold {

enum class Protocol { Efidl, Traditional };

const char* protocol_name(Protocol protocol);  ///< "efidl" / "traditional"
const char* protocol_label(Protocol protocol); ///< "EFIDL" / "TRA"

struct RunOptions {
    std::size_t k = 5;
    bool standardize = true;
    TreeSplitter tree_splitter = TreeSplitter::Best;
    std::size_t smote_neighbors = 5;
};

/// Outcome of one (dataset, resampler, classifier, protocol) cell: one AUC
/// and one F1 per fold plus their means, and the pooled per-row scores for
/// curve plotting.
struct CellResult {
    std::vector<double> fold_auc;
    std::vector<double> fold_f1;
    double mean_auc = 0.0;
    double mean_f1 = 0.0;
    ScoredPredictions pooled;
};

/// Leak-free evaluation: stratified folds are cut from the original rows
/// only; per fold the standardizer is fitted on the training rows, the
/// training portion is resampled, and the model is scored on the untouched
/// test fold. Scored rows are asserted to be Original provenance and each
/// row is scored exactly once across folds.
CellResult run_efidl(const Dataset& data, ResamplerKind resampler, ClassifierKind classifier,
                     const RunOptions& options, std::uint64_t seed, const CellCoords& coords);

/// Augment-then-split evaluation: the standardizer and the resampler see the
/// full dataset up front, then stratified folds are cut from the augmented
/// rows, so synthetic rows land in test folds. With ResamplerKind::None
/// there is nothing to augment and the computation is exactly run_efidl's;
/// calling both with the same coords returns bit-identical results.
CellResult run_traditional(const Dataset& data, ResamplerKind resampler,
                           ClassifierKind classifier, const RunOptions& options,
                           std::uint64_t seed, const CellCoords& coords);

/// 100 * (augmented - before) / before. Throws NonpositiveBaseline when
/// before <= 0.
double percent_diff(double augmented, double before);

}  // namespace fairfold
