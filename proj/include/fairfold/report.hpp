#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairfold/csv.hpp"
#include "fairfold/leak_probe.hpp"
#include "fairfold/protocols.hpp"

namespace fairfold {

enum class ProtocolChoice { Efidl, Traditional, Both };

struct DatasetSpec {
    std::filesystem::path path;
    std::string label_column;
    std::string positive_value;
    MissingPolicy missing = MissingPolicy::DropRow;
    std::string name;  ///< defaults to the file stem
};

struct LeakProbeSpec {
    std::size_t n_majority = 900;
    std::size_t n_minority = 100;
    std::size_t dims = 5;
};

struct ExperimentConfig {
    std::vector<DatasetSpec> datasets;
    std::optional<LeakProbeSpec> leak_probe;
    /// Augmenting methods to evaluate; the no-resampling baseline is always
    /// run in addition.
    std::vector<ResamplerKind> resamplers{
        ResamplerKind::Adasyn,   ResamplerKind::Smote, ResamplerKind::SvmSmote,
        ResamplerKind::Ros,      ResamplerKind::Rus,   ResamplerKind::ClusterCentroids,
    };
    std::vector<ClassifierKind> classifiers{
        ClassifierKind::LogisticRegression, ClassifierKind::Knn5,
        ClassifierKind::DecisionTree,       ClassifierKind::RandomForest,
        ClassifierKind::GaussianNb,         ClassifierKind::Qda,
    };
    std::size_t k = 5;
    std::uint64_t seed = 20211228;
    ProtocolChoice protocols = ProtocolChoice::Both;
    bool standardize = true;
    TreeSplitter tree_splitter = TreeSplitter::Best;
    std::filesystem::path out_dir = "out";

    std::vector<Protocol> selected_protocols() const;
};

struct CellKey {
    std::string dataset;
    ResamplerKind resampler = ResamplerKind::None;
    ClassifierKind classifier = ClassifierKind::LogisticRegression;
    Protocol protocol = Protocol::Efidl;
};

/// One grid slot. A skipped cell keeps its key and the reason; its numbers
/// are blank everywhere downstream.
struct ReportCell {
    CellKey key;
    std::optional<CellResult> result;
    std::string skip_reason;
    bool skipped() const noexcept { return !result.has_value(); }
};

struct EvaluationReport {
    ExperimentConfig config;
    std::vector<std::string> dataset_names;
    std::vector<ReportCell> cells;
};

/// Runs every grid cell over the configured datasets (loaded from disk, plus
/// the generated probe when configured). The baseline cell per (dataset,
/// classifier) is computed once and reported under every selected protocol.
/// Cells that hit NoBorderline, MinoritySingleton or DegenerateFeatures are
/// recorded as skipped; other errors propagate.
EvaluationReport run_grid(const ExperimentConfig& config);

/// Same, over datasets already in memory (name, data) pairs.
EvaluationReport run_grid(const ExperimentConfig& config,
                          const std::vector<std::pair<std::string, Dataset>>& datasets);

struct BestCell {
    std::string dataset;
    ClassifierKind classifier = ClassifierKind::LogisticRegression;
    ResamplerKind resampler = ResamplerKind::None;
    double auc = 0.0;
};

/// Highest mean AUC per dataset among the leak-free cells (baseline
/// included); falls back to the augmented-evaluation cells when the grid ran
/// without the leak-free protocol. Ties break toward the earlier classifier
/// in config order, then the earlier resampler.
std::vector<BestCell> best_cells(const EvaluationReport& report);

// --- serialization -----------------------------------------------------------

/// dataset,resampler,classifier,protocol,fold,auc,f1 at full precision.
void write_long_csv(const EvaluationReport& report, std::ostream& out);

/// Per-dataset table: rows are resampling methods (baseline first) times
/// {EFIDL, TRA, % diff}, columns the classifiers plus their average, three
/// decimals.
void write_wide_csv(const EvaluationReport& report, const std::string& dataset,
                    std::ostream& out);

void write_best_csv(const EvaluationReport& report, std::ostream& out);

void write_skipped_csv(const EvaluationReport& report, std::ostream& out);

/// Static overlay of every cell's pooled ROC curve for one dataset and
/// protocol. Color keys the resampler, dash pattern the classifier.
std::string roc_overlay_svg(const EvaluationReport& report, const std::string& dataset,
                            Protocol protocol);

/// Writes every artifact (long/wide/best/skipped CSVs, per-cell ROC CSVs,
/// per-dataset SVG overlays) under out_dir and returns the paths written.
/// On failure the files created so far are removed before the error is
/// rethrown.
std::vector<std::filesystem::path> emit_report(const EvaluationReport& report,
                                               const std::filesystem::path& out_dir);

/// Parsed row of a long-form CSV; value-exact round-trip partner of
/// write_long_csv.
struct LongRow {
    std::string dataset;
    std::string resampler;
    std::string classifier;
    std::string protocol;
    std::size_t fold = 0;
    double auc = 0.0;
    double f1 = 0.0;
};

std::vector<LongRow> long_rows(const EvaluationReport& report);
std::vector<LongRow> parse_long_csv(std::istream& in);

/// Filesystem-safe rendering of a dataset name.
std::string sanitize_name(const std::string& name);

}  // namespace fairfold
