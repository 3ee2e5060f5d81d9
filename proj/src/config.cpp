#include "fairfold/config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace fairfold {

namespace {

std::string trim(const std::string& text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    return text.substr(begin, end - begin);
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
    std::uint64_t value = 0;
    const std::string t = trim(text);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        raise(Errc::InvalidValue, "'" + text + "' is not an unsigned integer for " + key);
    }
    return value;
}

MissingPolicy parse_missing(const std::string& token) {
    if (token == "drop") return MissingPolicy::DropRow;
    if (token == "mean") return MissingPolicy::MeanImpute;
    raise(Errc::InvalidValue, "missing policy must be 'drop' or 'mean', got '" + token + "'");
}

ProtocolChoice parse_protocols(const std::string& token) {
    if (token == "efidl") return ProtocolChoice::Efidl;
    if (token == "traditional") return ProtocolChoice::Traditional;
    if (token == "both") return ProtocolChoice::Both;
    raise(Errc::InvalidValue,
          "protocols must be 'efidl', 'traditional' or 'both', got '" + token + "'");
}

TreeSplitter parse_splitter(const std::string& token) {
    if (token == "best") return TreeSplitter::Best;
    if (token == "random") return TreeSplitter::Random;
    raise(Errc::InvalidValue, "tree splitter must be 'best' or 'random', got '" + token + "'");
}

LeakProbeSpec parse_leak_probe(const std::string& text) {
    const auto parts = split_list(text);
    if (parts.size() != 3) {
        raise(Errc::InvalidValue, "leak probe spec needs 'n_majority,n_minority,dims'");
    }
    LeakProbeSpec spec;
    spec.n_majority = parse_u64(parts[0], "leak-probe");
    spec.n_minority = parse_u64(parts[1], "leak-probe");
    spec.dims = parse_u64(parts[2], "leak-probe");
    return spec;
}

bool parse_bool(const std::string& token, const std::string& key) {
    if (token == "true" || token == "1" || token == "yes") return true;
    if (token == "false" || token == "0" || token == "no") return false;
    raise(Errc::InvalidValue, "'" + token + "' is not a boolean for " + key);
}

/// Raw settings before precedence resolution.
struct RawSettings {
    std::vector<std::string> data;
    std::vector<std::string> label_col;
    std::vector<std::string> positive;
    std::vector<std::string> missing;
    std::optional<std::string> resamplers;
    std::optional<std::string> classifiers;
    std::optional<std::string> k;
    std::optional<std::string> seed;
    std::optional<std::string> protocols;
    std::optional<std::string> standardize;
    std::optional<std::string> tree_splitter;
    std::optional<std::string> out;
    std::optional<std::string> leak_probe;

    void set(const std::string& key, const std::string& value) {
        if (key == "data") data.push_back(value);
        else if (key == "label_col") label_col.push_back(value);
        else if (key == "positive") positive.push_back(value);
        else if (key == "missing") missing.push_back(value);
        else if (key == "resamplers") resamplers = value;
        else if (key == "classifiers") classifiers = value;
        else if (key == "k") k = value;
        else if (key == "seed") seed = value;
        else if (key == "protocols") protocols = value;
        else if (key == "standardize") standardize = value;
        else if (key == "tree_splitter") tree_splitter = value;
        else if (key == "out") out = value;
        else if (key == "leak_probe") leak_probe = value;
        else raise(Errc::UnknownFlag, "unknown config key '" + key + "'");
    }

    /// Every field present in `other` wins over this one.
    void override_with(const RawSettings& other) {
        if (!other.data.empty()) data = other.data;
        if (!other.label_col.empty()) label_col = other.label_col;
        if (!other.positive.empty()) positive = other.positive;
        if (!other.missing.empty()) missing = other.missing;
        if (other.resamplers) resamplers = other.resamplers;
        if (other.classifiers) classifiers = other.classifiers;
        if (other.k) k = other.k;
        if (other.seed) seed = other.seed;
        if (other.protocols) protocols = other.protocols;
        if (other.standardize) standardize = other.standardize;
        if (other.tree_splitter) tree_splitter = other.tree_splitter;
        if (other.out) out = other.out;
        if (other.leak_probe) leak_probe = other.leak_probe;
    }
};

RawSettings read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::IoError, "cannot open config file '" + path + "'");
    RawSettings settings;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            raise(Errc::InvalidValue, "config line " + std::to_string(line_no) +
                                          " is not key=value: '" + stripped + "'");
        }
        settings.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return settings;
}

template <typename T>
std::vector<T> broadcast(const std::vector<std::string>& values, std::size_t n,
                         const std::string& key, T fallback, T (*parse)(const std::string&)) {
    std::vector<T> out;
    if (values.empty()) {
        out.assign(n, fallback);
    } else if (values.size() == 1) {
        out.assign(n, parse(values[0]));
    } else if (values.size() == n) {
        for (const auto& value : values) out.push_back(parse(value));
    } else {
        raise(Errc::InvalidValue, key + " given " + std::to_string(values.size()) +
                                      " times for " + std::to_string(n) + " datasets");
    }
    return out;
}

std::string identity(const std::string& s) { return s; }

}  // namespace

ResamplerKind parse_resampler(const std::string& token) {
    if (token == "none") return ResamplerKind::None;
    if (token == "ros") return ResamplerKind::Ros;
    if (token == "rus") return ResamplerKind::Rus;
    if (token == "smote") return ResamplerKind::Smote;
    if (token == "svmsmote") return ResamplerKind::SvmSmote;
    if (token == "adasyn") return ResamplerKind::Adasyn;
    if (token == "cc") return ResamplerKind::ClusterCentroids;
    raise(Errc::InvalidValue, "unknown resampler '" + token + "'");
}

ClassifierKind parse_classifier(const std::string& token) {
    if (token == "lr") return ClassifierKind::LogisticRegression;
    if (token == "knn5") return ClassifierKind::Knn5;
    if (token == "dtree") return ClassifierKind::DecisionTree;
    if (token == "rforest") return ClassifierKind::RandomForest;
    if (token == "gaussnb") return ClassifierKind::GaussianNb;
    if (token == "qda") return ClassifierKind::Qda;
    raise(Errc::InvalidValue, "unknown classifier '" + token + "'");
}

std::optional<ExperimentConfig> parse_config(const std::vector<std::string>& args,
                                             std::ostream& help_out) {
    CLI::App app{"Imbalanced-data evaluation harness: compares leak-free and "
                 "augment-then-split cross-validation over six resamplers and six "
                 "classifiers."};
    app.name("fairfold");

    RawSettings flags;
    std::string config_path;
    std::string opt_resamplers, opt_classifiers, opt_k, opt_seed, opt_protocols;
    std::string opt_tree_splitter, opt_out, opt_leak_probe;
    bool no_standardize = false;

    app.add_option("--config", config_path, "key=value config file; flags override it");
    app.add_option("--data", flags.data, "dataset CSV path (repeatable)");
    app.add_option("--label-col", flags.label_col,
                   "label column name (one per dataset, or one for all)");
    app.add_option("--positive", flags.positive,
                   "label value mapped to the positive class (one per dataset, or one for all)");
    app.add_option("--missing", flags.missing,
                   "missing-cell policy: drop or mean (one per dataset, or one for all)");
    const auto* o_res = app.add_option(
        "--resamplers", opt_resamplers,
        "comma list of adasyn,smote,svmsmote,ros,rus,cc (baseline always runs)");
    const auto* o_clf = app.add_option("--classifiers", opt_classifiers,
                                       "comma list of lr,knn5,dtree,rforest,gaussnb,qda");
    const auto* o_k = app.add_option("--k", opt_k, "fold count (default 5)");
    const auto* o_seed = app.add_option("--seed", opt_seed, "base seed (default 20211228)");
    const auto* o_proto =
        app.add_option("--protocols", opt_protocols, "efidl, traditional or both (default both)");
    app.add_flag("--no-standardize", no_standardize, "skip per-pipeline z-scoring");
    const auto* o_split = app.add_option("--tree-splitter", opt_tree_splitter,
                                         "decision tree splitter: best (default) or random");
    const auto* o_out = app.add_option("--out", opt_out, "output directory (default ./out)");
    const auto* o_probe =
        app.add_option("--leak-probe", opt_leak_probe,
                       "generate a no-signal dataset: n_majority,n_minority,dims");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        help_out << app.help();
        return std::nullopt;
    } catch (const CLI::ExtrasError& error) {
        raise(Errc::UnknownFlag, error.what());
    } catch (const CLI::ParseError& error) {
        raise(Errc::InvalidValue, error.what());
    }

    if (o_res->count() > 0) flags.resamplers = opt_resamplers;
    if (o_clf->count() > 0) flags.classifiers = opt_classifiers;
    if (o_k->count() > 0) flags.k = opt_k;
    if (o_seed->count() > 0) flags.seed = opt_seed;
    if (o_proto->count() > 0) flags.protocols = opt_protocols;
    if (no_standardize) flags.standardize = "false";
    if (o_split->count() > 0) flags.tree_splitter = opt_tree_splitter;
    if (o_out->count() > 0) flags.out = opt_out;
    if (o_probe->count() > 0) flags.leak_probe = opt_leak_probe;

    RawSettings merged;
    if (!config_path.empty()) merged = read_config_file(config_path);
    merged.override_with(flags);

    ExperimentConfig config;
    if (const char* env_seed = std::getenv("FAIRFOLD_SEED")) {
        config.seed = parse_u64(env_seed, "FAIRFOLD_SEED");
    }
    if (merged.seed) config.seed = parse_u64(*merged.seed, "seed");
    if (merged.k) {
        config.k = parse_u64(*merged.k, "k");
        if (config.k < 2) raise(Errc::InvalidValue, "k must be at least 2");
    }
    if (merged.protocols) config.protocols = parse_protocols(*merged.protocols);
    if (merged.standardize) config.standardize = parse_bool(*merged.standardize, "standardize");
    if (merged.tree_splitter) config.tree_splitter = parse_splitter(*merged.tree_splitter);
    if (merged.out) config.out_dir = *merged.out;
    if (merged.leak_probe) config.leak_probe = parse_leak_probe(*merged.leak_probe);
    if (merged.resamplers) {
        config.resamplers.clear();
        for (const auto& token : split_list(*merged.resamplers)) {
            const ResamplerKind kind = parse_resampler(token);
            if (kind != ResamplerKind::None) config.resamplers.push_back(kind);
        }
    }
    if (merged.classifiers) {
        config.classifiers.clear();
        for (const auto& token : split_list(*merged.classifiers)) {
            config.classifiers.push_back(parse_classifier(token));
        }
        if (config.classifiers.empty()) {
            raise(Errc::InvalidValue, "classifier list is empty");
        }
    }

    if (!merged.data.empty()) {
        if (merged.label_col.empty()) {
            raise(Errc::InvalidValue, "--label-col is required with --data");
        }
        if (merged.positive.empty()) {
            raise(Errc::InvalidValue, "--positive is required with --data");
        }
        const std::size_t n = merged.data.size();
        const auto labels = broadcast<std::string>(merged.label_col, n, "label_col", "", identity);
        const auto positives = broadcast<std::string>(merged.positive, n, "positive", "", identity);
        const auto policies = broadcast<MissingPolicy>(merged.missing, n, "missing",
                                                       MissingPolicy::DropRow, parse_missing);
        for (std::size_t i = 0; i < n; ++i) {
            DatasetSpec spec;
            spec.path = merged.data[i];
            spec.label_column = labels[i];
            spec.positive_value = positives[i];
            spec.missing = policies[i];
            config.datasets.push_back(std::move(spec));
        }
    }

    if (config.datasets.empty() && !config.leak_probe) {
        raise(Errc::MissingDataset, "give at least one --data file or a --leak-probe spec");
    }
    return config;
}

int cli_run(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
    try {
        const EvaluationReport report = run_grid(config);
        for (const ReportCell& cell : report.cells) {
            log << "[cell] " << cell.key.dataset << ' ' << resampler_name(cell.key.resampler)
                << ' ' << classifier_name(cell.key.classifier) << ' '
                << protocol_name(cell.key.protocol);
            if (cell.skipped()) {
                log << " skipped: " << cell.skip_reason << '\n';
            } else {
                log << " mean_auc=" << format_fixed(cell.result->mean_auc, 3)
                    << " mean_f1=" << format_fixed(cell.result->mean_f1, 3) << '\n';
            }
        }
        const auto written = emit_report(report, config.out_dir);
        log << written.size() << " artifacts written to " << config.out_dir.string() << '\n';

        std::size_t skipped = 0;
        for (const ReportCell& cell : report.cells) {
            if (cell.skipped()) ++skipped;
        }
        if (skipped > 0) {
            log << skipped << " cells skipped; see "
                << (config.out_dir / "skipped.csv").string() << '\n';
        }
        return 0;
    } catch (const Error& error) {
        err << "error: " << error.what() << '\n';
        return 1;
    } catch (const std::exception& error) {
        err << "error: " << error.what() << '\n';
        return 1;
    }
}

}  // namespace fairfold
