#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "fairfold/errors.hpp"

namespace fairfold {

struct ScoredPrediction {
    double score = 0.0;
    bool positive = false;
};

/// Continuous scores paired with ground truth for one test fold.
struct ScoredPredictions {
    std::vector<ScoredPrediction> pairs;
    std::size_t fold = 0;
};

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Points run from (0,0) to (1,1) with both coordinates nondecreasing.
/// thresholds[i] is the score cutoff producing points[i]; the (0,0) anchor
/// carries +infinity.
struct RocCurve {
    std::vector<RocPoint> points;
    std::vector<double> thresholds;
};

/// One point per distinct score, scores walked in descending order so tied
/// scores collapse into a single point. Throws OneClassOnly without both
/// classes.
RocCurve roc_curve(const ScoredPredictions& predictions);

/// Trapezoidal area under roc_curve. Agrees with auc_rank to within
/// floating-point noise; the rank route is kept as an independent check.
double auc(const ScoredPredictions& predictions);

/// Mann-Whitney statistic: concordant pairs plus half the ties, divided by
/// n_pos * n_neg.
double auc_rank(const ScoredPredictions& predictions);

/// F1 at the fixed 0.5 cutoff (score >= 0.5 predicts positive). Zero when
/// nothing true-positive exists but errors do; one when the fold is
/// perfectly classified.
double f1_at_half(const ScoredPredictions& predictions);

/// "threshold,fpr,tpr" rows, full precision.
void write_roc_csv(const RocCurve& curve, std::ostream& out);

/// Minimal standalone SVG: axes with quarter ticks, the chance diagonal and
/// the curve as a single polyline. Deterministic output.
std::string roc_svg(const RocCurve& curve, const std::string& title);

}  // namespace fairfold
