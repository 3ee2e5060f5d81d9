// Acceptance suite: one line per criterion, nonzero exit if any fail.
// Usage: acceptance [source_root]   (source_root locates data/pima.csv)

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <vector>

#include "fairfold/config.hpp"
#include "fairfold/csv.hpp"
#include "fairfold/leak_probe.hpp"
#include "fairfold/neighbors.hpp"
#include "fairfold/protocols.hpp"
#include "fairfold/report.hpp"
#include "fairfold/splitter.hpp"

using namespace fairfold;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
    if (!condition) throw Failure(message);
}

std::string fmt(double value) { return format_double(value); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

fs::path g_root;

Dataset load_pima() {
    fs::path path = g_root / "data" / "pima.csv";
    if (const char* override_path = std::getenv("FAIRFOLD_PIMA")) path = override_path;
    if (!fs::exists(path)) {
        throw Failure("dataset file not found: " + path.string() +
                      " (place the public Pima Indians Diabetes CSV there; header row with "
                      "an 'Outcome' column, positive value '1'; see data/README.md)");
    }
    Dataset data = load_csv(path, "Outcome", "1", MissingPolicy::DropRow);
    require(data.rows() == 768, "pima.csv should hold 768 rows, got " +
                                    std::to_string(data.rows()));
    require(data.cols() == 8, "pima.csv should hold 8 feature columns");
    require(data.positives() == 268, "pima.csv should hold 268 positive rows");
    return data;
}

Dataset gaussian_classed(std::size_t n_min, std::size_t n_maj, std::size_t d, double separation,
                         std::uint64_t seed) {
    SeededRng rng(seed, 0);
    std::vector<std::string> names;
    for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
    Dataset data(d, names, "1");
    std::vector<double> row(d);
    for (std::size_t i = 0; i < n_min + n_maj; ++i) {
        const bool positive = i < n_min;
        for (auto& v : row) v = rng.next_gaussian() + (positive ? separation : -separation);
        data.append_row(row, positive);
    }
    return data;
}

// --- criteria ----------------------------------------------------------------

void criterion_pima_baseline() {
    const auto start = std::chrono::steady_clock::now();
    const Dataset pima = load_pima();
    const RunOptions options;
    const CellResult cell = run_efidl(pima, ResamplerKind::None,
                                      ClassifierKind::LogisticRegression, options, 20211228,
                                      CellCoords{0, 0, 0, 0});
    const double elapsed = seconds_since(start);
    require(std::abs(cell.mean_auc - 0.833) <= 0.05,
            "mean AUC " + fmt(cell.mean_auc) + " not within 0.05 of 0.833");
    require(elapsed < 10.0, "runtime " + fmt(elapsed) + "s exceeds 10s");
    std::cout << "      mean_auc=" << fmt(cell.mean_auc) << " elapsed=" << fmt(elapsed)
              << "s\n";
}

void criterion_pima_inflation() {
    const auto start = std::chrono::steady_clock::now();
    const Dataset pima = load_pima();
    const RunOptions options;
    const CellCoords coords{0, static_cast<std::uint32_t>(ResamplerKind::Smote),
                            static_cast<std::uint32_t>(ClassifierKind::Knn5), 0};
    const CellResult efidl = run_efidl(pima, ResamplerKind::Smote, ClassifierKind::Knn5,
                                       options, 20211228, coords);
    CellCoords tra_coords = coords;
    tra_coords.protocol = static_cast<std::uint32_t>(Protocol::Traditional);
    const CellResult traditional = run_traditional(pima, ResamplerKind::Smote,
                                                   ClassifierKind::Knn5, options, 20211228,
                                                   tra_coords);
    const double elapsed = seconds_since(start);
    require(traditional.mean_auc - efidl.mean_auc >= 0.02,
            "traditional " + fmt(traditional.mean_auc) + " minus leak-free " +
                fmt(efidl.mean_auc) + " is below 0.02");
    require(elapsed < 30.0, "runtime " + fmt(elapsed) + "s exceeds 30s");
    std::cout << "      tra=" << fmt(traditional.mean_auc) << " efidl=" << fmt(efidl.mean_auc)
              << " elapsed=" << fmt(elapsed) << "s\n";
}

void criterion_leak_probe() {
    const auto start = std::chrono::steady_clock::now();
    const RunOptions options;
    const std::uint64_t seeds[] = {20211228, 20211229, 20211230};
    for (const std::uint64_t seed : seeds) {
        SeededRng data_rng = rng_for_cell(seed, CellCoords{0, 0, 0, 0}, kStreamDataGen);
        const Dataset probe = generate_leak_probe(900, 100, 5, data_rng);
        const CellCoords coords{0, static_cast<std::uint32_t>(ResamplerKind::Smote),
                                static_cast<std::uint32_t>(ClassifierKind::Knn5), 0};
        const CellResult efidl =
            run_efidl(probe, ResamplerKind::Smote, ClassifierKind::Knn5, options, seed, coords);
        CellCoords tra_coords = coords;
        tra_coords.protocol = static_cast<std::uint32_t>(Protocol::Traditional);
        const CellResult traditional = run_traditional(probe, ResamplerKind::Smote,
                                                       ClassifierKind::Knn5, options, seed,
                                                       tra_coords);
        require(efidl.mean_auc >= 0.40 && efidl.mean_auc <= 0.60,
                "seed " + std::to_string(seed) + ": no-signal AUC " + fmt(efidl.mean_auc) +
                    " escaped [0.40, 0.60]");
        require(traditional.mean_auc - efidl.mean_auc >= 0.10,
                "seed " + std::to_string(seed) + ": inflation " +
                    fmt(traditional.mean_auc - efidl.mean_auc) + " is below 0.10");
        std::cout << "      seed=" << seed << " efidl=" << fmt(efidl.mean_auc)
                  << " tra=" << fmt(traditional.mean_auc) << "\n";
    }
    const double elapsed = seconds_since(start);
    require(elapsed < 60.0, "runtime " + fmt(elapsed) + "s exceeds 60s");
}

void criterion_bef_equivalence() {
    std::vector<std::pair<std::string, Dataset>> grid;
    {
        SeededRng rng(20211228, 1);
        grid.emplace_back("probe", generate_leak_probe(140, 40, 3, rng));
    }
    grid.emplace_back("gaussians", gaussian_classed(60, 140, 4, 0.7, 9));

    const ClassifierKind kinds[] = {ClassifierKind::LogisticRegression, ClassifierKind::Knn5,
                                    ClassifierKind::DecisionTree, ClassifierKind::RandomForest,
                                    ClassifierKind::GaussianNb, ClassifierKind::Qda};
    const RunOptions options;
    for (std::size_t ds = 0; ds < grid.size(); ++ds) {
        for (const ClassifierKind kind : kinds) {
            const CellCoords coords{static_cast<std::uint32_t>(ds), 0,
                                    static_cast<std::uint32_t>(kind), 0};
            const CellResult efidl = run_efidl(grid[ds].second, ResamplerKind::None, kind,
                                               options, 20211228, coords);
            const CellResult traditional = run_traditional(grid[ds].second, ResamplerKind::None,
                                                           kind, options, 20211228, coords);
            require(efidl.fold_auc == traditional.fold_auc,
                    grid[ds].first + "/" + classifier_name(kind) +
                        ": per-fold AUCs differ between protocols");
        }
    }
    std::cout << "      " << grid.size() << " datasets x 6 classifiers, exact equality\n";
}

void criterion_provenance_suite() {
    const ResamplerKind kinds[] = {ResamplerKind::Ros,      ResamplerKind::Rus,
                                   ResamplerKind::Smote,    ResamplerKind::SvmSmote,
                                   ResamplerKind::Adasyn,   ResamplerKind::ClusterCentroids};
    SeededRng meta(424242, 0);
    std::size_t checked = 0;
    for (const ResamplerKind kind : kinds) {
        for (int trial = 0; trial < 1000; ++trial) {
            const std::size_t n_min = 2 + meta.next_below(10);
            const std::size_t n_maj = n_min + meta.next_below(18);
            const std::size_t d = 1 + meta.next_below(4);
            std::vector<std::string> names;
            for (std::size_t j = 0; j < d; ++j) names.push_back("f" + std::to_string(j));
            Dataset train(d, names, "1");
            std::vector<double> row(d);
            for (std::size_t i = 0; i < n_min + n_maj; ++i) {
                const bool positive = i < n_min;
                for (auto& v : row) {
                    v = meta.next_gaussian() + (positive ? 0.8 : -0.8);
                }
                train.append_row(row, positive);
            }

            SeededRng rng(777, static_cast<std::uint64_t>(trial) * 8 +
                                   static_cast<std::uint64_t>(kind));
            ResampleOutput out;
            try {
                out = resample(kind, train, rng);
            } catch (const Error& error) {
                require(kind == ResamplerKind::Adasyn && error.code() == Errc::NoBorderline,
                        std::string("unexpected error from ") + resampler_name(kind) + ": " +
                            error.what());
                continue;  // a pure-minority neighborhood: legitimately inapplicable
            }
            ++checked;

            // Balance.
            require(out.after.minority() == out.after.majority(),
                    std::string(resampler_name(kind)) + ": output is not balanced");

            // Provenance completeness and segment geometry.
            const bool oversampler =
                kind == ResamplerKind::Ros || kind == ResamplerKind::Smote ||
                kind == ResamplerKind::SvmSmote || kind == ResamplerKind::Adasyn;
            std::vector<std::size_t> synth_per_parent(train.rows(), 0);
            for (std::size_t i = 0; i < out.data.rows(); ++i) {
                const RowOrigin& origin = out.data.origin(i);
                if (origin.is_original()) continue;
                require(origin.parent_a < train.rows(), "parent_a out of range");
                if (oversampler) {
                    require(train.positive(origin.parent_a) == train.minority_is_positive(),
                            "oversampler parent is not a minority row");
                }
                if (origin.parent_b) {
                    require(*origin.parent_b < train.rows(), "parent_b out of range");
                    const auto a = train.row(origin.parent_a);
                    const auto b = train.row(*origin.parent_b);
                    const double lo = kind == ResamplerKind::SvmSmote ? -0.5 : 0.0;
                    require(origin.lambda >= lo && origin.lambda <= 1.0, "lambda out of range");
                    for (std::size_t j = 0; j < d; ++j) {
                        const double expected = a[j] + origin.lambda * (b[j] - a[j]);
                        require(std::abs(out.data.at(i, j) - expected) < 1e-9,
                                "synthetic row is off its anchor segment");
                    }
                }
                ++synth_per_parent[origin.parent_a];
            }

            // Retained rows are bit-identical to their sources.
            if (oversampler) {
                require(out.data.rows() >= train.rows(), "oversampler dropped rows");
                for (std::size_t i = 0; i < train.rows(); ++i) {
                    require(out.data.origin(i).is_original(), "input row lost its tag");
                    require(out.data.positive(i) == train.positive(i), "label changed");
                    for (std::size_t j = 0; j < d; ++j) {
                        require(out.data.at(i, j) == train.at(i, j),
                                "retained row is not bit-identical");
                    }
                }
            } else {
                for (std::size_t i = 0; i < out.data.rows(); ++i) {
                    if (!out.data.origin(i).is_original()) continue;
                    bool found = false;
                    for (std::size_t s = 0; s < train.rows() && !found; ++s) {
                        if (train.positive(s) != out.data.positive(i)) continue;
                        bool same = true;
                        for (std::size_t j = 0; j < d && same; ++j) {
                            same = train.at(s, j) == out.data.at(i, j);
                        }
                        found = same;
                    }
                    require(found, "kept row does not match any input row bit-for-bit");
                }
            }

            // Method-specific counts.
            if (kind == ResamplerKind::ClusterCentroids) {
                std::size_t centroids = 0;
                for (std::size_t i = 0; i < out.data.rows(); ++i) {
                    if (!out.data.origin(i).is_original()) ++centroids;
                }
                require(centroids == std::min(train.positives(), train.negatives()),
                        "centroid count differs from the minority count");
            }
            if (kind == ResamplerKind::Adasyn && n_maj > n_min) {
                // Independent largest-remainder oracle.
                const auto minority = train.minority_rows();
                std::vector<std::size_t> all(train.rows());
                std::iota(all.begin(), all.end(), std::size_t{0});
                const NeighborIndex index(train, all);
                const std::size_t k_full = std::min<std::size_t>(5, train.rows() - 1);
                std::vector<double> ratio(minority.size(), 0.0);
                double total = 0.0;
                for (std::size_t m = 0; m < minority.size(); ++m) {
                    for (const std::size_t id : index.query_row(minority[m], k_full)) {
                        if (train.positive(id) != train.minority_is_positive()) ratio[m] += 1.0;
                    }
                    ratio[m] /= static_cast<double>(k_full);
                    total += ratio[m];
                }
                const double gap = static_cast<double>(train.majority_rows().size() -
                                                       minority.size());
                std::size_t assigned_total = 0;
                for (std::size_t m = 0; m < minority.size(); ++m) {
                    const double quota = ratio[m] / total * gap;
                    const double got = static_cast<double>(synth_per_parent[minority[m]]);
                    require(std::abs(got - quota) < 1.0,
                            "allocation " + fmt(got) + " strays from quota " + fmt(quota));
                    assigned_total += synth_per_parent[minority[m]];
                }
                require(assigned_total == static_cast<std::size_t>(gap),
                        "allocations do not sum to the gap");
            }
        }
    }
    std::cout << "      " << checked << " resampler runs verified, zero violations\n";
}

void criterion_metric_oracle() {
    SeededRng rng(31337, 0);
    std::size_t tied_sets = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const bool quantize = trial % 2 == 0;
        ScoredPredictions p;
        const std::size_t n = 10 + rng.next_below(80);
        for (std::size_t i = 0; i < n; ++i) {
            double score = rng.next_double();
            if (quantize) score = std::floor(score * 5) / 5.0;
            p.pairs.push_back({score, rng.next_below(2) == 1});
        }
        p.pairs.push_back({0.5, true});
        p.pairs.push_back({0.5, false});
        if (quantize) ++tied_sets;
        const double trapezoid = auc(p);
        const double rank = auc_rank(p);
        require(std::abs(trapezoid - rank) < 1e-9,
                "formulations disagree: " + fmt(trapezoid) + " vs " + fmt(rank));
    }
    require(tied_sets * 10 >= 3 * 1000, "tie coverage below 30%");

    ScoredPredictions hand;
    hand.pairs = {{0.8, true}, {0.4, true}, {0.6, false}, {0.2, false}};
    require(auc(hand) == 0.75, "hand-enumerated case is not exactly 0.75");
    std::cout << "      1000 score sets (" << tied_sets << " with heavy ties), max gap < 1e-9\n";
}

void criterion_splitter_suite() {
    SeededRng meta(5150, 0);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t positives = 10 + meta.next_below(60);
        const std::size_t negatives = 10 + meta.next_below(200);
        const Dataset data = gaussian_classed(positives, negatives, 2, 0.0,
                                              static_cast<std::uint64_t>(trial + 1));
        for (const std::size_t k : {2ul, 3ul, 5ul, 10ul}) {
            SeededRng rng(616, static_cast<std::uint64_t>(trial * 16 + static_cast<int>(k)));
            const FoldPlan plan = stratified_kfold(data, k, rng);
            std::vector<std::size_t> pos(k, 0), neg(k, 0), seen(data.rows(), 0);
            for (std::size_t row = 0; row < data.rows(); ++row) {
                ++seen[row];
                if (data.positive(row)) ++pos[plan.fold_of(row)];
                else ++neg[plan.fold_of(row)];
            }
            std::size_t union_size = 0;
            for (std::size_t fold = 0; fold < k; ++fold) {
                union_size += plan.fold_rows(fold).size();
            }
            require(union_size == data.rows(), "folds do not partition the rows");
            for (const std::size_t count : seen) require(count == 1, "row in several folds");
            for (const auto& counts : {pos, neg}) {
                const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
                require(*hi - *lo <= 1, "per-class fold counts differ by more than one");
            }
        }
    }
    std::cout << "      200 datasets x k in {2,3,5,10}, partitions exact\n";
}

void criterion_determinism() {
    ExperimentConfig config;
    config.leak_probe = LeakProbeSpec{300, 60, 4};
    config.seed = 20211228;

    const fs::path base = fs::temp_directory_path() / "fairfold_acceptance_det";
    const fs::path dir_a = base / "a";
    const fs::path dir_b = base / "b";
    fs::remove_all(base);

    config.out_dir = dir_a;
    std::ostringstream log, err;
    require(cli_run(config, log, err) == 0, "first run failed: " + err.str());
    config.out_dir = dir_b;
    require(cli_run(config, log, err) == 0, "second run failed: " + err.str());

    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir_a)) {
        if (!entry.is_regular_file()) continue;
        const fs::path relative = fs::relative(entry.path(), dir_a);
        std::ifstream in_a(entry.path(), std::ios::binary);
        std::ifstream in_b(dir_b / relative, std::ios::binary);
        require(in_b.good(), "second run lacks " + relative.string());
        std::ostringstream buf_a, buf_b;
        buf_a << in_a.rdbuf();
        buf_b << in_b.rdbuf();
        require(buf_a.str() == buf_b.str(), relative.string() + " differs between runs");
        ++compared;
    }
    require(compared >= 88, "expected the full artifact set, saw " + std::to_string(compared));
    fs::remove_all(base);
    std::cout << "      " << compared << " artifacts byte-identical across reruns\n";
}

void criterion_percent_diff() {
    const double computed = percent_diff(0.643, 0.759);
    require(std::abs(computed - (-15.261)) <= 0.15,
            "computed " + fmt(computed) + " vs published -15.261");

    // Three more published cells, all against the same 0.759 baseline.
    const std::pair<double, double> cells[] = {
        {0.650, -14.385},  // interpolation oversampler, logistic column
        {0.750, -1.140},   // random undersampler, logistic column
        {0.655, -13.701},  // centroid undersampler, logistic column
    };
    for (const auto& [aug, published] : cells) {
        const double diff = percent_diff(aug, 0.759);
        require(std::abs(diff - published) <= 0.15,
                "computed " + fmt(diff) + " vs published " + fmt(published));
    }
    require(percent_diff(0.75, 0.50) == 50.0, "exact arithmetic check failed");
    std::cout << "      four published cells matched within display rounding\n";
}

}  // namespace

int main(int argc, char** argv) {
    g_root = argc > 1 ? fs::path(argv[1]) : fs::current_path();

    const std::pair<const char*, std::function<void()>> criteria[] = {
        {"1 pima baseline sanity (BEF LR within 0.05 of 0.833, <10s)", criterion_pima_baseline},
        {"2 pima directional inflation (SMOTE+KNN5, TRA-EFIDL >= 0.02, <30s)",
         criterion_pima_inflation},
        {"3 leak-probe demonstration (EFIDL in [0.40,0.60], inflation >= 0.10, 3 seeds, <60s)",
         criterion_leak_probe},
        {"4 BEF equivalence (per-fold identical AUCs under both protocols)",
         criterion_bef_equivalence},
        {"5 provenance suite (1000 randomized inputs per resampler, zero violations)",
         criterion_provenance_suite},
        {"6 metric oracle (trapezoid vs rank within 1e-9, hand case exact)",
         criterion_metric_oracle},
        {"7 splitter suite (exact partitions, per-class counts within one)",
         criterion_splitter_suite},
        {"8 determinism (full grid twice, byte-identical artifacts)", criterion_determinism},
        {"9 percent-diff arithmetic (published cells within 0.15)", criterion_percent_diff},
    };

    int failed = 0;
    for (const auto& [title, run] : criteria) {
        try {
            run();
            std::cout << "PASS  " << title << "\n";
        } catch (const std::exception& error) {
            ++failed;
            std::cout << "FAIL  " << title << "\n      " << error.what() << "\n";
        }
    }
    if (failed > 0) {
        std::cout << failed << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
