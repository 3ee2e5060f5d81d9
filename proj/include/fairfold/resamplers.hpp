#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "fairfold/dataset.hpp"
#include "fairfold/rng.hpp"

namespace fairfold {

enum class ResamplerKind {
    None,              ///< pass-through baseline
    Ros,               ///< random oversampling with replacement
    Rus,               ///< random undersampling without replacement
    Smote,             ///< neighbor interpolation oversampling
    SvmSmote,          ///< margin-guided interpolation oversampling
    Adasyn,            ///< density-adaptive interpolation oversampling
    ClusterCentroids,  ///< majority class summarized by k-means centroids
};

/// Lowercase id used in CLI flags and long-form CSV.
const char* resampler_name(ResamplerKind kind);
/// Table label used in the wide-form CSV (BEF, ROS, RUS, ...).
const char* resampler_label(ResamplerKind kind);

struct LabelCounts {
    std::size_t positive = 0;
    std::size_t negative = 0;
    std::size_t minority() const noexcept { return positive < negative ? positive : negative; }
    std::size_t majority() const noexcept { return positive < negative ? negative : positive; }
};

LabelCounts count_labels(const Dataset& data);

/// Result of one balancing pass. Retained input rows appear first, in their
/// input order, with feature values copied verbatim; generated rows follow,
/// tagged Synthetic. Synthetic parent ids refer to rows of the input
/// dataset.
///
/// Every method treats the positive class as the minority (the convention
/// used throughout) and throws MinorityExceedsMajority when the positives
/// outnumber the negatives.
struct ResampleOutput {
    Dataset data;
    ResamplerKind method = ResamplerKind::None;
    LabelCounts before;
    LabelCounts after;
};

/// Dispatch by kind; k_neighbors only affects the interpolating methods.
ResampleOutput resample(ResamplerKind kind, const Dataset& train, SeededRng& rng,
                        std::size_t k_neighbors = 5);

/// Replicates uniformly chosen minority rows (with replacement) until the
/// classes balance. Copies are tagged Synthetic with lambda 0 so that the
/// evaluation protocols can keep them out of test folds.
ResampleOutput ros(const Dataset& train, SeededRng& rng);

/// Keeps a uniform without-replacement sample of majority rows, sized to the
/// minority class. Everything kept is Original.
ResampleOutput rus(const Dataset& train, SeededRng& rng);

/// Chawla-style interpolation: each synthetic row sits on the segment from a
/// minority seed to one of its k nearest minority neighbors. The generation
/// budget is spread round-robin over the shuffled minority rows, remainder
/// to the first rows in shuffled order.
ResampleOutput smote(const Dataset& train, std::size_t k_neighbors, SeededRng& rng);

/// Density-adaptive variant: each minority row's budget share is
/// proportional to the majority fraction among its k nearest neighbors in
/// the full training set, apportioned by largest remainder so the output is
/// exactly balanced. Throws NoBorderline when every minority row has a pure
/// minority neighborhood.
ResampleOutput adasyn(const Dataset& train, std::size_t k_neighbors, SeededRng& rng);

/// Margin-guided variant: an internal linear hinge-loss separator (fixed
/// 200-epoch subgradient descent, lambda 1e-2) selects minority rows inside
/// the margin band as seeds (all minority rows when the band is empty).
/// Seeds in majority-heavy neighborhoods interpolate conservatively
/// (lambda in [0, 0.5]); seeds with pure minority neighborhoods may also
/// extrapolate away from the neighbor by up to half the segment, recorded
/// as a negative lambda.
ResampleOutput svmsmote(const Dataset& train, std::size_t k_neighbors, SeededRng& rng);

/// Replaces the majority class with the centroids of a k-means run
/// (k = minority count) over the majority rows. Each centroid is Synthetic
/// with parent_a = the nearest majority row of the input.
ResampleOutput cluster_centroids(const Dataset& train, SeededRng& rng);

/// Audit dump: feature columns, label (1 = positive), provenance, parent_a,
/// parent_b, lambda. Full-precision values.
void write_resample_csv(const ResampleOutput& output, std::ostream& out);

}  // namespace fairfold
