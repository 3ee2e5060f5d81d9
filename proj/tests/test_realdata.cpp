#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "fairfold/csv.hpp"
#include "fairfold/protocols.hpp"

using namespace fairfold;

#ifndef FAIRFOLD_SOURCE_DIR
#define FAIRFOLD_SOURCE_DIR "."
#endif

namespace {

Dataset load_wdbc() {
    const std::filesystem::path path =
        std::filesystem::path(FAIRFOLD_SOURCE_DIR) / "data" / "wdbc.csv";
    REQUIRE(std::filesystem::exists(path));
    return load_csv(path, "diagnosis", "M", MissingPolicy::DropRow);
}

}  // namespace

TEST_CASE("wdbc loads with the documented shape and imbalance") {
    const Dataset data = load_wdbc();
    CHECK(data.rows() == 569);
    CHECK(data.cols() == 30);
    CHECK(data.positives() == 212);  // malignant, the minority
    const auto rate = imbalance_rate(data);
    CHECK(rate.value == doctest::Approx(212.0 / 357.0));
}

TEST_CASE("leak-free baseline AUCs match scikit-learn pipelines on wdbc") {
    // References computed with scikit-learn (StandardScaler fitted per fold,
    // stratified 5-fold, mean test AUC, averaged over three shuffles):
    //   LogisticRegression 0.9955, KNeighborsClassifier(5) 0.9814,
    //   GaussianNB 0.9869, QuadraticDiscriminantAnalysis 0.9881.
    const Dataset data = load_wdbc();
    const RunOptions options;
    const struct {
        ClassifierKind kind;
        double reference;
    } cases[] = {
        {ClassifierKind::LogisticRegression, 0.9955},
        {ClassifierKind::Knn5, 0.9814},
        {ClassifierKind::GaussianNb, 0.9869},
        {ClassifierKind::Qda, 0.9881},
    };
    for (const auto& test : cases) {
        const CellCoords coords{0, 0, static_cast<std::uint32_t>(test.kind), 0};
        const CellResult cell =
            run_efidl(data, ResamplerKind::None, test.kind, options, 20211228, coords);
        CAPTURE(classifier_name(test.kind));
        CHECK(std::abs(cell.mean_auc - test.reference) < 0.012);
    }
}

TEST_CASE("tree ensembles rank wdbc far above chance") {
    const Dataset data = load_wdbc();
    const RunOptions options;
    for (const ClassifierKind kind :
         {ClassifierKind::DecisionTree, ClassifierKind::RandomForest}) {
        const CellCoords coords{0, 0, static_cast<std::uint32_t>(kind), 0};
        const CellResult cell =
            run_efidl(data, ResamplerKind::None, kind, options, 20211228, coords);
        CAPTURE(classifier_name(kind));
        CHECK(cell.mean_auc > 0.90);
        CHECK(cell.mean_auc <= 1.0);
    }
}
