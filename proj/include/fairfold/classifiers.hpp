#pragma once

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "fairfold/dataset.hpp"
#include "fairfold/rng.hpp"

namespace fairfold {

enum class ClassifierKind {
    LogisticRegression,
    Knn5,
    DecisionTree,
    RandomForest,
    GaussianNb,
    Qda,
};

/// Lowercase id used in CLI flags and long-form CSV.
const char* classifier_name(ClassifierKind kind);
/// Column label used in the wide-form CSV (LR, KNN, DT, RF, NB, QDA).
const char* classifier_label(ClassifierKind kind);

enum class TreeSplitter { Best, Random };

struct FitOptions {
    TreeSplitter tree_splitter = TreeSplitter::Best;
};

/// A fitted binary classifier. score() returns the positive-class score in
/// [0, 1]; models are immutable once fitted.
class Model {
public:
    virtual ~Model() = default;
    virtual ClassifierKind kind() const = 0;
    virtual double score(std::span<const double> point) const = 0;
};

/// Fits one classifier. Throws SingleClass when a class is missing and
/// DegenerateFeatures when every feature column is constant (logistic
/// regression and quadratic discriminant only).
std::unique_ptr<Model> fit(ClassifierKind kind, const Dataset& train, SeededRng& rng,
                           const FitOptions& options = {});

// --- concrete models, exposed for inspection in tests -----------------------

class LogisticModel : public Model {
public:
    LogisticModel(std::vector<double> weights, double bias, std::vector<double> loss_history);
    ClassifierKind kind() const override { return ClassifierKind::LogisticRegression; }
    double score(std::span<const double> point) const override;

    std::span<const double> weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }
    /// Objective value after every accepted step, first entry at the start.
    std::span<const double> loss_history() const noexcept { return loss_history_; }

private:
    std::vector<double> weights_;
    double bias_;
    std::vector<double> loss_history_;
};

class KnnModel : public Model {
public:
    KnnModel(Dataset train, std::size_t k);
    ClassifierKind kind() const override { return ClassifierKind::Knn5; }
    double score(std::span<const double> point) const override;

    /// Leave-one-out score of a stored training row: the label fraction of
    /// its nearest other rows.
    double score_loo(std::size_t row_id) const;

private:
    double fraction_among(std::span<const double> point, std::size_t exclude,
                          bool has_exclude) const;
    Dataset train_;
    std::size_t k_;
};

/// One CART-style tree; also the random forest member.
class TreeModel : public Model {
public:
    struct Node {
        bool leaf = true;
        std::size_t feature = 0;
        double threshold = 0.0;
        std::size_t left = 0;
        std::size_t right = 0;
        double positive_fraction = 0.0;
        std::size_t n_rows = 0;
        std::size_t depth = 0;
    };

    struct Growth {
        std::size_t max_depth = 8;
        std::size_t max_leaves = std::numeric_limits<std::size_t>::max();
        /// A node may split only when n_rows >= min_split_fraction * n_train
        /// and n_rows >= 2.
        double min_split_fraction = 0.0;
        TreeSplitter splitter = TreeSplitter::Best;
    };

    /// Grows splits best-first (largest weighted impurity decrease first) so
    /// a leaf budget keeps the most useful splits. Each node considers
    /// ceil(sqrt(d)) features sampled without replacement from rng.
    static TreeModel grow(const Dataset& train, std::span<const std::size_t> rows,
                          const Growth& growth, SeededRng& rng);

    ClassifierKind kind() const override { return ClassifierKind::DecisionTree; }
    double score(std::span<const double> point) const override;

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t leaf_count() const;
    std::size_t depth() const;

private:
    std::vector<Node> nodes_;
};

class ForestModel : public Model {
public:
    explicit ForestModel(std::vector<TreeModel> trees);
    ClassifierKind kind() const override { return ClassifierKind::RandomForest; }
    /// Mean of the member trees' leaf fractions.
    double score(std::span<const double> point) const override;

    const std::vector<TreeModel>& trees() const noexcept { return trees_; }

private:
    std::vector<TreeModel> trees_;
};

class GaussNbModel : public Model {
public:
    GaussNbModel(const Dataset& train);
    ClassifierKind kind() const override { return ClassifierKind::GaussianNb; }
    double score(std::span<const double> point) const override;

private:
    double log_joint(std::span<const double> point, bool positive) const;
    std::size_t dims_;
    double log_prior_pos_, log_prior_neg_;
    std::vector<double> mean_pos_, mean_neg_, var_pos_, var_neg_;
};

class QdaModel : public Model {
public:
    QdaModel(const Dataset& train);
    ClassifierKind kind() const override { return ClassifierKind::Qda; }
    double score(std::span<const double> point) const override;

private:
    struct ClassDensity {
        double log_prior = 0.0;
        std::vector<double> mean;
        std::vector<double> cholesky;  ///< lower triangular factor of the covariance
        double log_det = 0.0;          ///< log determinant of the covariance
    };
    double log_joint(const ClassDensity& density, std::span<const double> point) const;
    ClassDensity fit_class(const Dataset& train, bool positive) const;

    std::size_t dims_ = 0;
    ClassDensity pos_, neg_;
};

}  // namespace fairfold
