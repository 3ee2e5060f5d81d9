#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fairfold/classifiers.hpp"

using namespace fairfold;

namespace {

Dataset make_1d(std::initializer_list<std::pair<double, bool>> rows) {
    Dataset data(1, {"x"}, "1");
    for (const auto& [x, positive] : rows) {
        const double row[] = {x};
        data.append_row(row, positive);
    }
    return data;
}

Dataset random_classed(std::size_t n, std::size_t d, SeededRng& rng, double separation = 1.0) {
    std::vector<std::string> names;
    for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
    Dataset data(d, names, "1");
    std::vector<double> row(d);
    for (std::size_t i = 0; i < n; ++i) {
        const bool positive = rng.next_below(3) == 0;
        for (auto& v : row) v = rng.next_gaussian() + (positive ? separation : -separation);
        data.append_row(row, positive);
    }
    if (!data.both_classes_present()) {
        const double fix[] = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
        data.append_row(std::span<const double>(fix, d), data.positives() == 0);
    }
    return data;
}

}  // namespace

TEST_CASE("logistic regression learns the sign of a separable 1-D problem") {
    const Dataset train = make_1d({{-1, false}, {1, true}});
    SeededRng rng(1, 1);
    const auto model = fit(ClassifierKind::LogisticRegression, train, rng);
    const auto* logistic = dynamic_cast<const LogisticModel*>(model.get());
    REQUIRE(logistic != nullptr);
    CHECK(logistic->weights()[0] > 0.0);
    const double plus[] = {1.0};
    const double minus[] = {-1.0};
    CHECK(model->score(plus) > 0.5);
    CHECK(model->score(minus) < 0.5);
}

TEST_CASE("logistic regression loss never increases") {
    SeededRng data_rng(5, 0);
    const Dataset train = random_classed(120, 3, data_rng, 0.3);
    SeededRng rng(5, 1);
    const auto model = fit(ClassifierKind::LogisticRegression, train, rng);
    const auto* logistic = dynamic_cast<const LogisticModel*>(model.get());
    REQUIRE(logistic != nullptr);
    const auto history = logistic->loss_history();
    REQUIRE(history.size() >= 2);
    for (std::size_t i = 1; i < history.size(); ++i) CHECK(history[i] <= history[i - 1]);
}

TEST_CASE("logistic regression rejects an all-constant feature matrix") {
    Dataset data(2, {"a", "b"}, "1");
    for (int i = 0; i < 6; ++i) {
        const double row[] = {3.0, -2.0};
        data.append_row(row, i % 2 == 0);
    }
    SeededRng rng(1, 1);
    try {
        fit(ClassifierKind::LogisticRegression, data, rng);
        FAIL("expected an error");
    } catch (const Error& error) {
        CHECK(error.code() == Errc::DegenerateFeatures);
    }
    try {
        fit(ClassifierKind::Qda, data, rng);
        FAIL("expected an error");
    } catch (const Error& error) {
        CHECK(error.code() == Errc::DegenerateFeatures);
    }
}

TEST_CASE("knn scores a point sitting on five positive duplicates as certain") {
    Dataset data(1, {"x"}, "1");
    for (int i = 0; i < 5; ++i) {
        const double row[] = {2.0};
        data.append_row(row, true);
    }
    for (int i = 0; i < 4; ++i) {
        const double row[] = {50.0 + i};
        data.append_row(row, false);
    }
    SeededRng rng(1, 1);
    const auto model = fit(ClassifierKind::Knn5, data, rng);
    const double probe[] = {2.0};
    CHECK(model->score(probe) == 1.0);
}

TEST_CASE("knn leave-one-out equals the quadratic-scan oracle") {
    SeededRng data_rng(15, 0);
    const Dataset train = random_classed(80, 2, data_rng);
    SeededRng rng(15, 1);
    const auto model = fit(ClassifierKind::Knn5, train, rng);
    const auto* knn = dynamic_cast<const KnnModel*>(model.get());
    REQUIRE(knn != nullptr);

    for (std::size_t query = 0; query < train.rows(); ++query) {
        std::vector<std::pair<double, std::size_t>> ranked;
        for (std::size_t i = 0; i < train.rows(); ++i) {
            if (i == query) continue;
            double dist = 0.0;
            for (std::size_t j = 0; j < train.cols(); ++j) {
                const double delta = train.at(query, j) - train.at(i, j);
                dist += delta * delta;
            }
            ranked.emplace_back(dist, i);
        }
        std::sort(ranked.begin(), ranked.end());
        std::size_t positives = 0;
        for (std::size_t i = 0; i < 5; ++i) {
            if (train.positive(ranked[i].second)) ++positives;
        }
        CHECK(knn->score_loo(query) == static_cast<double>(positives) / 5.0);
    }
}

TEST_CASE("a pure-feature node becomes a leaf with the class fraction") {
    Dataset data(1, {"x"}, "1");
    for (int i = 0; i < 3; ++i) {
        const double row[] = {1.0};
        data.append_row(row, true);
    }
    const double row[] = {1.0};
    data.append_row(row, false);
    SeededRng rng(1, 1);
    const auto model = fit(ClassifierKind::DecisionTree, data, rng);
    const double probe[] = {123.0};
    CHECK(model->score(probe) == 0.75);
}

TEST_CASE("decision tree honors depth, leaf and minimum-split caps") {
    SeededRng meta(25, 0);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t n = 40 + meta.next_below(200);
        const Dataset train = random_classed(n, 4, meta, 0.5);
        SeededRng rng(25, static_cast<std::uint64_t>(trial + 1));
        const auto model = fit(ClassifierKind::DecisionTree, train, rng);
        const auto* tree = dynamic_cast<const TreeModel*>(model.get());
        REQUIRE(tree != nullptr);
        CHECK(tree->depth() <= 8);
        CHECK(tree->leaf_count() <= 15);
        for (const auto& node : tree->nodes()) {
            if (node.leaf) continue;
            CHECK(static_cast<double>(node.n_rows) >=
                  0.1 * static_cast<double>(train.rows()));
        }
    }
}

TEST_CASE("random-splitter trees still respect the structural caps") {
    SeededRng meta(35, 0);
    const Dataset train = random_classed(150, 4, meta, 0.5);
    SeededRng rng(35, 1);
    FitOptions options;
    options.tree_splitter = TreeSplitter::Random;
    const auto model = fit(ClassifierKind::DecisionTree, train, rng, options);
    const auto* tree = dynamic_cast<const TreeModel*>(model.get());
    REQUIRE(tree != nullptr);
    CHECK(tree->depth() <= 8);
    CHECK(tree->leaf_count() <= 15);
}

TEST_CASE("forest score is the mean of its trees") {
    // Two stumps that cannot split: leaf fractions 0.2 and 0.8.
    Dataset fifth(1, {"x"}, "1");
    for (int i = 0; i < 5; ++i) {
        const double row[] = {1.0};
        fifth.append_row(row, i == 0);
    }
    Dataset four_fifths(1, {"x"}, "1");
    for (int i = 0; i < 5; ++i) {
        const double row[] = {1.0};
        four_fifths.append_row(row, i != 0);
    }
    SeededRng rng(1, 1);
    const std::vector<std::size_t> rows{0, 1, 2, 3, 4};
    TreeModel::Growth growth;
    std::vector<TreeModel> trees;
    trees.push_back(TreeModel::grow(fifth, rows, growth, rng));
    trees.push_back(TreeModel::grow(four_fifths, rows, growth, rng));
    const ForestModel forest(std::move(trees));
    const double probe[] = {0.0};
    CHECK(forest.score(probe) == doctest::Approx(0.5));
}

TEST_CASE("forest of ten bootstrap trees respects the depth cap") {
    SeededRng data_rng(45, 0);
    const Dataset train = random_classed(200, 3, data_rng, 0.8);
    SeededRng rng(45, 1);
    const auto model = fit(ClassifierKind::RandomForest, train, rng);
    const auto* forest = dynamic_cast<const ForestModel*>(model.get());
    REQUIRE(forest != nullptr);
    CHECK(forest->trees().size() == 10);
    for (const TreeModel& tree : forest->trees()) CHECK(tree.depth() <= 5);
}

TEST_CASE("gaussian naive bayes is near even odds at the symmetry point") {
    SeededRng rng(20211228, 77);
    Dataset data(1, {"x"}, "1");
    for (int i = 0; i < 10000; ++i) {
        const bool positive = i % 2 == 0;
        const double row[] = {rng.next_gaussian() + (positive ? 1.0 : -1.0)};
        data.append_row(row, positive);
    }
    SeededRng fit_rng(1, 1);
    const auto model = fit(ClassifierKind::GaussianNb, data, fit_rng);
    const double origin[] = {0.0};
    CHECK(std::abs(model->score(origin) - 0.5) < 0.05);
}

TEST_CASE("qda with identical class densities scores one half everywhere") {
    Dataset data(2, {"x", "y"}, "1");
    const double points[][2] = {{0, 0}, {1, 2}, {-1, 1}, {2, -1}, {0.5, 0.5}};
    for (const auto& p : points) {
        data.append_row(p, true);
        data.append_row(p, false);  // same rows in both classes
    }
    SeededRng rng(1, 1);
    const auto model = fit(ClassifierKind::Qda, data, rng);
    SeededRng probe_rng(2, 2);
    for (int i = 0; i < 20; ++i) {
        const double probe[] = {probe_rng.next_gaussian() * 3, probe_rng.next_gaussian() * 3};
        CHECK(model->score(probe) == doctest::Approx(0.5).epsilon(1e-9));
    }
}

TEST_CASE("all classifiers emit finite scores in [0,1] on extreme inputs") {
    SeededRng data_rng(55, 0);
    const Dataset train = random_classed(60, 3, data_rng);
    const ClassifierKind kinds[] = {ClassifierKind::LogisticRegression, ClassifierKind::Knn5,
                                    ClassifierKind::DecisionTree, ClassifierKind::RandomForest,
                                    ClassifierKind::GaussianNb, ClassifierKind::Qda};
    const double extremes[][3] = {{1e6, -1e6, 1e6}, {0, 0, 0}, {-1e6, -1e6, -1e6}};
    for (const ClassifierKind kind : kinds) {
        SeededRng rng(55, static_cast<std::uint64_t>(kind));
        const auto model = fit(kind, train, rng);
        for (const auto& point : extremes) {
            const double s = model->score(point);
            CHECK(std::isfinite(s));
            CHECK(s >= 0.0);
            CHECK(s <= 1.0);
        }
    }
}

TEST_CASE("fitting twice with the same stream gives identical scores") {
    SeededRng data_rng(65, 0);
    const Dataset train = random_classed(80, 3, data_rng, 0.6);
    const ClassifierKind kinds[] = {ClassifierKind::LogisticRegression, ClassifierKind::Knn5,
                                    ClassifierKind::DecisionTree, ClassifierKind::RandomForest,
                                    ClassifierKind::GaussianNb, ClassifierKind::Qda};
    for (const ClassifierKind kind : kinds) {
        SeededRng rng_a(65, 9);
        SeededRng rng_b(65, 9);
        const auto model_a = fit(kind, train, rng_a);
        const auto model_b = fit(kind, train, rng_b);
        SeededRng probe_rng(66, 0);
        for (int i = 0; i < 25; ++i) {
            const double probe[] = {probe_rng.next_gaussian(), probe_rng.next_gaussian(),
                                    probe_rng.next_gaussian()};
            CHECK(model_a->score(probe) == model_b->score(probe));
        }
    }
}

TEST_CASE("single-class training data is rejected") {
    Dataset data(1, {"x"}, "1");
    for (int i = 0; i < 6; ++i) {
        const double row[] = {static_cast<double>(i)};
        data.append_row(row, true);
    }
    SeededRng rng(1, 1);
    try {
        fit(ClassifierKind::GaussianNb, data, rng);
        FAIL("expected an error");
    } catch (const Error& error) {
        CHECK(error.code() == Errc::SingleClass);
    }
}
