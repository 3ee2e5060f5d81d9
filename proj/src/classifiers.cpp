#include "fairfold/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fairfold/neighbors.hpp"

namespace fairfold {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) {
    return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

bool all_features_constant(const Dataset& train) {
    for (std::size_t j = 0; j < train.cols(); ++j) {
        const double first = train.at(0, j);
        for (std::size_t i = 1; i < train.rows(); ++i) {
            if (train.at(i, j) != first) return false;
        }
    }
    return true;
}

// Distinct features sampled without replacement, in draw order.
std::vector<std::size_t> sample_features(std::size_t dims, std::size_t count, SeededRng& rng) {
    std::vector<std::size_t> all(dims);
    std::iota(all.begin(), all.end(), std::size_t{0});
    count = std::min(count, dims);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + rng.next_below(dims - i);
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return all;
}

double gini(std::size_t positives, std::size_t total) {
    if (total == 0) return 0.0;
    const double p = static_cast<double>(positives) / static_cast<double>(total);
    return 2.0 * p * (1.0 - p);
}

}  // namespace

const char* classifier_name(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::LogisticRegression: return "lr";
        case ClassifierKind::Knn5: return "knn5";
        case ClassifierKind::DecisionTree: return "dtree";
        case ClassifierKind::RandomForest: return "rforest";
        case ClassifierKind::GaussianNb: return "gaussnb";
        case ClassifierKind::Qda: return "qda";
    }
    return "?";
}

const char* classifier_label(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::LogisticRegression: return "LR";
        case ClassifierKind::Knn5: return "KNN";
        case ClassifierKind::DecisionTree: return "DT";
        case ClassifierKind::RandomForest: return "RF";
        case ClassifierKind::GaussianNb: return "NB";
        case ClassifierKind::Qda: return "QDA";
    }
    return "?";
}

// --- logistic regression -----------------------------------------------------

namespace {

constexpr double kRidgeStrength = 1e-4;
constexpr std::size_t kMaxIterations = 1000;
constexpr double kGradientTolerance = 1e-6;

LogisticModel fit_logistic(const Dataset& train) {
    const std::size_t n = train.rows();
    const std::size_t d = train.cols();
    std::vector<double> weights(d, 0.0);
    double bias = 0.0;

    const auto objective = [&](const std::vector<double>& w, double b) {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = train.row(i);
            double z = b;
            for (std::size_t j = 0; j < d; ++j) z += w[j] * row[j];
            loss += softplus(z) - (train.positive(i) ? z : 0.0);
        }
        loss /= static_cast<double>(n);
        double penalty = 0.0;
        for (const double wj : w) penalty += wj * wj;
        return loss + 0.5 * kRidgeStrength * penalty;
    };

    std::vector<double> loss_history{objective(weights, bias)};
    std::vector<double> grad(d, 0.0);
    std::vector<double> candidate(d, 0.0);
    double step = 1.0;

    for (std::size_t iter = 0; iter < kMaxIterations; ++iter) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double grad_bias = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = train.row(i);
            double z = bias;
            for (std::size_t j = 0; j < d; ++j) z += weights[j] * row[j];
            const double residual = sigmoid(z) - (train.positive(i) ? 1.0 : 0.0);
            for (std::size_t j = 0; j < d; ++j) grad[j] += residual * row[j];
            grad_bias += residual;
        }
        grad_bias /= static_cast<double>(n);
        double grad_norm = std::abs(grad_bias);
        for (std::size_t j = 0; j < d; ++j) {
            grad[j] = grad[j] / static_cast<double>(n) + kRidgeStrength * weights[j];
            grad_norm = std::max(grad_norm, std::abs(grad[j]));
        }
        if (grad_norm < kGradientTolerance) break;

        // Halve the step until the objective stops increasing.
        const double current = loss_history.back();
        double trial_bias = 0.0;
        double trial_loss = 0.0;
        for (;;) {
            for (std::size_t j = 0; j < d; ++j) candidate[j] = weights[j] - step * grad[j];
            trial_bias = bias - step * grad_bias;
            trial_loss = objective(candidate, trial_bias);
            if (trial_loss <= current) break;
            step *= 0.5;
            if (step < 1e-18) break;
        }
        if (trial_loss > current) break;  // step underflowed
        weights.swap(candidate);
        bias = trial_bias;
        loss_history.push_back(trial_loss);
        step = std::min(step * 2.0, 1e6);
    }
    return LogisticModel(std::move(weights), bias, std::move(loss_history));
}

}  // namespace

LogisticModel::LogisticModel(std::vector<double> weights, double bias,
                             std::vector<double> loss_history)
    : weights_(std::move(weights)), bias_(bias), loss_history_(std::move(loss_history)) {}

double LogisticModel::score(std::span<const double> point) const {
    if (point.size() != weights_.size()) {
        raise(Errc::DimensionMismatch, "point width differs from fitted model");
    }
    double z = bias_;
    for (std::size_t j = 0; j < weights_.size(); ++j) z += weights_[j] * point[j];
    return sigmoid(z);
}

// --- k nearest neighbors -----------------------------------------------------

KnnModel::KnnModel(Dataset train, std::size_t k) : train_(std::move(train)), k_(k) {}

double KnnModel::fraction_among(std::span<const double> point, std::size_t exclude,
                                bool has_exclude) const {
    if (point.size() != train_.cols()) {
        raise(Errc::DimensionMismatch, "point width differs from fitted model");
    }
    std::vector<std::pair<double, std::size_t>> ranked;
    ranked.reserve(train_.rows());
    for (std::size_t i = 0; i < train_.rows(); ++i) {
        if (has_exclude && i == exclude) continue;
        ranked.emplace_back(squared_distance(point, train_.row(i)), i);
    }
    const std::size_t k = std::min(k_, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (train_.positive(ranked[i].second)) ++positives;
    }
    return static_cast<double>(positives) / static_cast<double>(k);
}

double KnnModel::score(std::span<const double> point) const {
    return fraction_among(point, 0, false);
}

double KnnModel::score_loo(std::size_t row_id) const {
    return fraction_among(train_.row(row_id), row_id, true);
}

// --- decision tree -----------------------------------------------------------

namespace {

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double priority = 0.0;  ///< rows * impurity decrease
};

SplitChoice best_split(const Dataset& train, const std::vector<std::size_t>& rows,
                       const std::vector<std::size_t>& features, TreeSplitter splitter,
                       SeededRng& rng) {
    constexpr double kMinGain = 1e-12;
    const std::size_t n = rows.size();
    std::size_t total_pos = 0;
    for (const std::size_t id : rows) {
        if (train.positive(id)) ++total_pos;
    }
    const double parent_impurity = gini(total_pos, n);

    SplitChoice choice;
    double best_gain = kMinGain;
    std::vector<std::pair<double, bool>> column(n);

    for (const std::size_t feature : features) {
        if (splitter == TreeSplitter::Best) {
            for (std::size_t i = 0; i < n; ++i) {
                column[i] = {train.at(rows[i], feature), train.positive(rows[i])};
            }
            std::sort(column.begin(), column.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::size_t left_n = 0;
            std::size_t left_pos = 0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                ++left_n;
                if (column[i].second) ++left_pos;
                if (column[i].first == column[i + 1].first) continue;
                const double threshold = column[i].first +
                                         0.5 * (column[i + 1].first - column[i].first);
                const std::size_t right_n = n - left_n;
                const double weighted =
                    (static_cast<double>(left_n) * gini(left_pos, left_n) +
                     static_cast<double>(right_n) * gini(total_pos - left_pos, right_n)) /
                    static_cast<double>(n);
                const double gain = parent_impurity - weighted;
                if (gain > best_gain) {
                    best_gain = gain;
                    choice = {true, feature, threshold, static_cast<double>(n) * gain};
                }
            }
        } else {
            double lo = train.at(rows[0], feature);
            double hi = lo;
            for (const std::size_t id : rows) {
                lo = std::min(lo, train.at(id, feature));
                hi = std::max(hi, train.at(id, feature));
            }
            if (!(hi > lo)) continue;
            const double threshold = lo + rng.next_double() * (hi - lo);
            std::size_t left_n = 0;
            std::size_t left_pos = 0;
            for (const std::size_t id : rows) {
                if (train.at(id, feature) <= threshold) {
                    ++left_n;
                    if (train.positive(id)) ++left_pos;
                }
            }
            if (left_n == 0 || left_n == n) continue;
            const std::size_t right_n = n - left_n;
            const double weighted =
                (static_cast<double>(left_n) * gini(left_pos, left_n) +
                 static_cast<double>(right_n) * gini(total_pos - left_pos, right_n)) /
                static_cast<double>(n);
            const double gain = parent_impurity - weighted;
            if (gain > best_gain) {
                best_gain = gain;
                choice = {true, feature, threshold, static_cast<double>(n) * gain};
            }
        }
    }
    return choice;
}

}  // namespace

TreeModel TreeModel::grow(const Dataset& train, std::span<const std::size_t> rows,
                          const Growth& growth, SeededRng& rng) {
    TreeModel tree;
    const std::size_t n_train = rows.size();
    const std::size_t dims = train.cols();
    const std::size_t features_per_node =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dims))));

    struct Pending {
        std::size_t node = 0;
        std::vector<std::size_t> rows;
        SplitChoice split;
    };
    std::vector<Pending> frontier;

    const auto make_node = [&](std::vector<std::size_t> node_rows, std::size_t depth) {
        Node node;
        node.n_rows = node_rows.size();
        node.depth = depth;
        std::size_t positives = 0;
        for (const std::size_t id : node_rows) {
            if (train.positive(id)) ++positives;
        }
        node.positive_fraction =
            static_cast<double>(positives) / static_cast<double>(node.n_rows);
        const std::size_t node_id = tree.nodes_.size();
        tree.nodes_.push_back(node);

        const bool splittable =
            depth < growth.max_depth && node_rows.size() >= 2 &&
            static_cast<double>(node_rows.size()) >=
                growth.min_split_fraction * static_cast<double>(n_train);
        if (splittable) {
            const auto features = sample_features(dims, features_per_node, rng);
            const SplitChoice split =
                best_split(train, node_rows, features, growth.splitter, rng);
            if (split.found) {
                frontier.push_back({node_id, std::move(node_rows), split});
            }
        }
        return node_id;
    };

    make_node(std::vector<std::size_t>(rows.begin(), rows.end()), 0);

    std::size_t leaves = 1;
    while (leaves < growth.max_leaves && !frontier.empty()) {
        // Highest priority first; ties go to the earliest created node.
        std::size_t best = 0;
        for (std::size_t i = 1; i < frontier.size(); ++i) {
            if (frontier[i].split.priority > frontier[best].split.priority ||
                (frontier[i].split.priority == frontier[best].split.priority &&
                 frontier[i].node < frontier[best].node)) {
                best = i;
            }
        }
        Pending pending = std::move(frontier[best]);
        frontier.erase(frontier.begin() + static_cast<std::ptrdiff_t>(best));

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        for (const std::size_t id : pending.rows) {
            if (train.at(id, pending.split.feature) <= pending.split.threshold) {
                left_rows.push_back(id);
            } else {
                right_rows.push_back(id);
            }
        }
        const std::size_t depth = tree.nodes_[pending.node].depth;
        const std::size_t left_id = make_node(std::move(left_rows), depth + 1);
        const std::size_t right_id = make_node(std::move(right_rows), depth + 1);
        Node& parent = tree.nodes_[pending.node];
        parent.leaf = false;
        parent.feature = pending.split.feature;
        parent.threshold = pending.split.threshold;
        parent.left = left_id;
        parent.right = right_id;
        ++leaves;
    }
    return tree;
}

double TreeModel::score(std::span<const double> point) const {
    std::size_t node = 0;
    while (!nodes_[node].leaf) {
        node = point[nodes_[node].feature] <= nodes_[node].threshold ? nodes_[node].left
                                                                     : nodes_[node].right;
    }
    return nodes_[node].positive_fraction;
}

std::size_t TreeModel::leaf_count() const {
    std::size_t count = 0;
    for (const Node& node : nodes_) {
        if (node.leaf) ++count;
    }
    return count;
}

std::size_t TreeModel::depth() const {
    std::size_t deepest = 0;
    for (const Node& node : nodes_) deepest = std::max(deepest, node.depth);
    return deepest;
}

// --- random forest -----------------------------------------------------------

ForestModel::ForestModel(std::vector<TreeModel> trees) : trees_(std::move(trees)) {
    if (trees_.empty()) raise(Errc::InvalidValue, "forest needs at least one tree");
}

double ForestModel::score(std::span<const double> point) const {
    double sum = 0.0;
    for (const TreeModel& tree : trees_) sum += tree.score(point);
    return sum / static_cast<double>(trees_.size());
}

// --- gaussian naive bayes ----------------------------------------------------

GaussNbModel::GaussNbModel(const Dataset& train) : dims_(train.cols()) {
    const std::size_t n = train.rows();
    const double n_pos = static_cast<double>(train.positives());
    const double n_neg = static_cast<double>(train.negatives());
    log_prior_pos_ = std::log(n_pos / static_cast<double>(n));
    log_prior_neg_ = std::log(n_neg / static_cast<double>(n));

    mean_pos_.assign(dims_, 0.0);
    mean_neg_.assign(dims_, 0.0);
    var_pos_.assign(dims_, 0.0);
    var_neg_.assign(dims_, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        auto& mean = train.positive(i) ? mean_pos_ : mean_neg_;
        const auto row = train.row(i);
        for (std::size_t j = 0; j < dims_; ++j) mean[j] += row[j];
    }
    for (std::size_t j = 0; j < dims_; ++j) {
        mean_pos_[j] /= n_pos;
        mean_neg_[j] /= n_neg;
    }
    std::vector<double> grand_mean(dims_, 0.0);
    std::vector<double> grand_var(dims_, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = train.row(i);
        for (std::size_t j = 0; j < dims_; ++j) grand_mean[j] += row[j];
    }
    for (std::size_t j = 0; j < dims_; ++j) grand_mean[j] /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = train.row(i);
        auto& var = train.positive(i) ? var_pos_ : var_neg_;
        const auto& mean = train.positive(i) ? mean_pos_ : mean_neg_;
        for (std::size_t j = 0; j < dims_; ++j) {
            var[j] += (row[j] - mean[j]) * (row[j] - mean[j]);
            grand_var[j] += (row[j] - grand_mean[j]) * (row[j] - grand_mean[j]);
        }
    }
    double max_variance = 0.0;
    for (std::size_t j = 0; j < dims_; ++j) {
        max_variance = std::max(max_variance, grand_var[j] / static_cast<double>(n));
    }
    const double smoothing = std::max(1e-9 * max_variance, 1e-12);
    for (std::size_t j = 0; j < dims_; ++j) {
        var_pos_[j] = var_pos_[j] / n_pos + smoothing;
        var_neg_[j] = var_neg_[j] / n_neg + smoothing;
    }
}

double GaussNbModel::log_joint(std::span<const double> point, bool positive) const {
    const auto& mean = positive ? mean_pos_ : mean_neg_;
    const auto& var = positive ? var_pos_ : var_neg_;
    double value = positive ? log_prior_pos_ : log_prior_neg_;
    for (std::size_t j = 0; j < dims_; ++j) {
        const double delta = point[j] - mean[j];
        value += -0.5 * std::log(2.0 * std::numbers::pi * var[j]) -
                 delta * delta / (2.0 * var[j]);
    }
    return value;
}

double GaussNbModel::score(std::span<const double> point) const {
    if (point.size() != dims_) {
        raise(Errc::DimensionMismatch, "point width differs from fitted model");
    }
    const double lp = log_joint(point, true);
    const double ln = log_joint(point, false);
    return sigmoid(lp - ln);
}

// --- quadratic discriminant --------------------------------------------------

namespace {

// Lower-triangular Cholesky factor; false when the matrix is not positive
// definite.
bool cholesky(std::vector<double>& matrix, std::size_t d) {
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = matrix[i * d + j];
            for (std::size_t k = 0; k < j; ++k) sum -= matrix[i * d + k] * matrix[j * d + k];
            if (i == j) {
                if (sum <= 0.0) return false;
                matrix[i * d + j] = std::sqrt(sum);
            } else {
                matrix[i * d + j] = sum / matrix[j * d + j];
            }
        }
        for (std::size_t j = i + 1; j < d; ++j) matrix[i * d + j] = 0.0;
    }
    return true;
}

}  // namespace

QdaModel::ClassDensity QdaModel::fit_class(const Dataset& train, bool positive) const {
    const auto ids = train.rows_with_label(positive);
    const std::size_t m = ids.size();
    const std::size_t d = train.cols();

    ClassDensity density;
    density.log_prior =
        std::log(static_cast<double>(m) / static_cast<double>(train.rows()));
    density.mean.assign(d, 0.0);
    for (const std::size_t id : ids) {
        const auto row = train.row(id);
        for (std::size_t j = 0; j < d; ++j) density.mean[j] += row[j];
    }
    for (std::size_t j = 0; j < d; ++j) density.mean[j] /= static_cast<double>(m);

    std::vector<double> covariance(d * d, 0.0);
    if (m >= 2) {
        for (const std::size_t id : ids) {
            const auto row = train.row(id);
            for (std::size_t a = 0; a < d; ++a) {
                const double da = row[a] - density.mean[a];
                for (std::size_t b = 0; b <= a; ++b) {
                    covariance[a * d + b] += da * (row[b] - density.mean[b]);
                }
            }
        }
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b <= a; ++b) {
                covariance[a * d + b] /= static_cast<double>(m - 1);
                covariance[b * d + a] = covariance[a * d + b];
            }
        }
    }

    double trace = 0.0;
    for (std::size_t j = 0; j < d; ++j) trace += covariance[j * d + j];
    double ridge = std::max(1e-6 * trace / static_cast<double>(d), 1e-12);
    for (int attempt = 0; attempt < 60; ++attempt) {
        std::vector<double> factor = covariance;
        for (std::size_t j = 0; j < d; ++j) factor[j * d + j] += ridge;
        if (cholesky(factor, d)) {
            density.cholesky = std::move(factor);
            density.log_det = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                density.log_det += 2.0 * std::log(density.cholesky[j * d + j]);
            }
            return density;
        }
        ridge *= 10.0;
    }
    raise(Errc::DegenerateFeatures, "class covariance cannot be made positive definite");
}

QdaModel::QdaModel(const Dataset& train)
    : dims_(train.cols()), pos_(fit_class(train, true)), neg_(fit_class(train, false)) {}

double QdaModel::log_joint(const ClassDensity& density, std::span<const double> point) const {
    const std::size_t d = dims_;
    // Solve L z = (x - mean); the quadratic form is |z|^2.
    std::vector<double> z(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double sum = point[i] - density.mean[i];
        for (std::size_t k = 0; k < i; ++k) sum -= density.cholesky[i * d + k] * z[k];
        z[i] = sum / density.cholesky[i * d + i];
    }
    double quadratic = 0.0;
    for (const double zi : z) quadratic += zi * zi;
    return density.log_prior -
           0.5 * (static_cast<double>(d) * std::log(2.0 * std::numbers::pi) +
                  density.log_det + quadratic);
}

double QdaModel::score(std::span<const double> point) const {
    if (point.size() != dims_) {
        raise(Errc::DimensionMismatch, "point width differs from fitted model");
    }
    return sigmoid(log_joint(pos_, point) - log_joint(neg_, point));
}

// --- dispatcher ---------------------------------------------------------------

std::unique_ptr<Model> fit(ClassifierKind kind, const Dataset& train, SeededRng& rng,
                           const FitOptions& options) {
    if (!train.both_classes_present()) {
        raise(Errc::SingleClass, "training set must hold both classes");
    }
    if (train.cols() == 0) raise(Errc::InvalidValue, "training set has no features");

    switch (kind) {
        case ClassifierKind::LogisticRegression: {
            if (all_features_constant(train)) {
                raise(Errc::DegenerateFeatures,
                      "all feature columns are constant; remove constant columns or pick a "
                      "different classifier");
            }
            return std::make_unique<LogisticModel>(fit_logistic(train));
        }
        case ClassifierKind::Knn5:
            return std::make_unique<KnnModel>(train, 5);
        case ClassifierKind::DecisionTree: {
            TreeModel::Growth growth;
            growth.max_depth = 8;
            growth.max_leaves = 15;
            growth.min_split_fraction = 0.1;
            growth.splitter = options.tree_splitter;
            std::vector<std::size_t> rows(train.rows());
            std::iota(rows.begin(), rows.end(), std::size_t{0});
            return std::make_unique<TreeModel>(TreeModel::grow(train, rows, growth, rng));
        }
        case ClassifierKind::RandomForest: {
            TreeModel::Growth growth;
            growth.max_depth = 5;
            std::vector<TreeModel> trees;
            trees.reserve(10);
            std::vector<std::size_t> bootstrap(train.rows());
            for (std::size_t t = 0; t < 10; ++t) {
                for (auto& id : bootstrap) {
                    id = static_cast<std::size_t>(rng.next_below(train.rows()));
                }
                trees.push_back(TreeModel::grow(train, bootstrap, growth, rng));
            }
            return std::make_unique<ForestModel>(std::move(trees));
        }
        case ClassifierKind::GaussianNb:
            return std::make_unique<GaussNbModel>(train);
        case ClassifierKind::Qda: {
            if (all_features_constant(train)) {
                raise(Errc::DegenerateFeatures,
                      "all feature columns are constant; remove constant columns or pick a "
                      "different classifier");
            }
            return std::make_unique<QdaModel>(train);
        }
    }
    raise(Errc::InvalidValue, "unknown classifier kind");
}

}  // namespace fairfold
