#include "fairfold/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace fairfold {

namespace {

const ResamplerKind kWideRowOrder[] = {
    ResamplerKind::None,     ResamplerKind::Adasyn, ResamplerKind::Smote,
    ResamplerKind::SvmSmote, ResamplerKind::Ros,    ResamplerKind::Rus,
    ResamplerKind::ClusterCentroids,
};

bool is_skippable(Errc code) {
    return code == Errc::NoBorderline || code == Errc::MinoritySingleton ||
           code == Errc::DegenerateFeatures;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string escaped = "\"";
    for (const char c : field) {
        if (c == '"') escaped += "\"\"";
        else escaped += c;
    }
    escaped += '"';
    return escaped;
}

struct CellLookup {
    std::map<std::tuple<std::string, int, int, int>, const ReportCell*> by_key;

    explicit CellLookup(const EvaluationReport& report) {
        for (const ReportCell& cell : report.cells) {
            by_key[{cell.key.dataset, static_cast<int>(cell.key.resampler),
                    static_cast<int>(cell.key.classifier),
                    static_cast<int>(cell.key.protocol)}] = &cell;
        }
    }

    const ReportCell* find(const std::string& dataset, ResamplerKind resampler,
                           ClassifierKind classifier, Protocol protocol) const {
        const auto it = by_key.find({dataset, static_cast<int>(resampler),
                                     static_cast<int>(classifier), static_cast<int>(protocol)});
        return it == by_key.end() ? nullptr : it->second;
    }
};

}  // namespace

std::vector<Protocol> ExperimentConfig::selected_protocols() const {
    switch (protocols) {
        case ProtocolChoice::Efidl: return {Protocol::Efidl};
        case ProtocolChoice::Traditional: return {Protocol::Traditional};
        case ProtocolChoice::Both: return {Protocol::Efidl, Protocol::Traditional};
    }
    return {};
}

EvaluationReport run_grid(const ExperimentConfig& config) {
    std::vector<std::pair<std::string, Dataset>> datasets;
    for (const DatasetSpec& spec : config.datasets) {
        const std::string name =
            spec.name.empty() ? spec.path.stem().string() : spec.name;
        datasets.emplace_back(name,
                              load_csv(spec.path, spec.label_column, spec.positive_value,
                                       spec.missing));
    }
    if (config.leak_probe) {
        CellCoords coords;
        coords.dataset = static_cast<std::uint32_t>(datasets.size());
        SeededRng rng = rng_for_cell(config.seed, coords, kStreamDataGen);
        datasets.emplace_back("leak_probe",
                              generate_leak_probe(config.leak_probe->n_majority,
                                                  config.leak_probe->n_minority,
                                                  config.leak_probe->dims, rng));
    }
    return run_grid(config, datasets);
}

EvaluationReport run_grid(const ExperimentConfig& config,
                          const std::vector<std::pair<std::string, Dataset>>& datasets) {
    if (datasets.empty()) raise(Errc::MissingDataset, "no datasets configured");
    if (config.classifiers.empty()) raise(Errc::InvalidValue, "no classifiers configured");
    if (config.k < 2) raise(Errc::InvalidValue, "fold count must be at least 2");

    EvaluationReport report;
    report.config = config;

    const RunOptions options{config.k, config.standardize, config.tree_splitter, 5};
    const auto protocols = config.selected_protocols();

    std::vector<ResamplerKind> sequence{ResamplerKind::None};
    sequence.insert(sequence.end(), config.resamplers.begin(), config.resamplers.end());

    for (std::size_t ds = 0; ds < datasets.size(); ++ds) {
        const auto& [name, data] = datasets[ds];
        report.dataset_names.push_back(name);

        for (const ResamplerKind resampler : sequence) {
            for (const ClassifierKind classifier : config.classifiers) {
                CellCoords coords;
                coords.dataset = static_cast<std::uint32_t>(ds);
                coords.resampler = static_cast<std::uint32_t>(resampler);
                coords.classifier = static_cast<std::uint32_t>(classifier);

                if (resampler == ResamplerKind::None) {
                    // The baseline is protocol independent: computed once,
                    // reported under every selected protocol.
                    coords.protocol = static_cast<std::uint32_t>(Protocol::Efidl);
                    std::optional<CellResult> result;
                    std::string reason;
                    try {
                        result = run_efidl(data, resampler, classifier, options, config.seed,
                                           coords);
                    } catch (const Error& error) {
                        if (!is_skippable(error.code())) throw;
                        reason = error.what();
                    }
                    for (const Protocol protocol : protocols) {
                        ReportCell cell;
                        cell.key = {name, resampler, classifier, protocol};
                        cell.result = result;
                        cell.skip_reason = reason;
                        report.cells.push_back(std::move(cell));
                    }
                    continue;
                }

                for (const Protocol protocol : protocols) {
                    coords.protocol = static_cast<std::uint32_t>(protocol);
                    ReportCell cell;
                    cell.key = {name, resampler, classifier, protocol};
                    try {
                        cell.result = protocol == Protocol::Efidl
                                          ? run_efidl(data, resampler, classifier, options,
                                                      config.seed, coords)
                                          : run_traditional(data, resampler, classifier,
                                                            options, config.seed, coords);
                    } catch (const Error& error) {
                        if (!is_skippable(error.code())) throw;
                        cell.skip_reason = error.what();
                    }
                    report.cells.push_back(std::move(cell));
                }
            }
        }
    }
    return report;
}

std::vector<BestCell> best_cells(const EvaluationReport& report) {
    const auto& config = report.config;
    const Protocol target = config.protocols == ProtocolChoice::Traditional
                                ? Protocol::Traditional
                                : Protocol::Efidl;

    const auto classifier_position = [&](ClassifierKind kind) {
        for (std::size_t i = 0; i < config.classifiers.size(); ++i) {
            if (config.classifiers[i] == kind) return i;
        }
        return config.classifiers.size();
    };
    const auto resampler_position = [&](ResamplerKind kind) {
        if (kind == ResamplerKind::None) return std::size_t{0};
        for (std::size_t i = 0; i < config.resamplers.size(); ++i) {
            if (config.resamplers[i] == kind) return i + 1;
        }
        return config.resamplers.size() + 1;
    };

    std::vector<BestCell> best;
    for (const std::string& dataset : report.dataset_names) {
        const ReportCell* chosen = nullptr;
        for (const ReportCell& cell : report.cells) {
            if (cell.key.dataset != dataset || cell.key.protocol != target || cell.skipped()) {
                continue;
            }
            if (chosen == nullptr) {
                chosen = &cell;
                continue;
            }
            const double auc = cell.result->mean_auc;
            const double best_auc = chosen->result->mean_auc;
            if (auc > best_auc) {
                chosen = &cell;
            } else if (auc == best_auc) {
                const auto rank = std::make_pair(classifier_position(cell.key.classifier),
                                                 resampler_position(cell.key.resampler));
                const auto best_rank =
                    std::make_pair(classifier_position(chosen->key.classifier),
                                   resampler_position(chosen->key.resampler));
                if (rank < best_rank) chosen = &cell;
            }
        }
        if (chosen != nullptr) {
            best.push_back({dataset, chosen->key.classifier, chosen->key.resampler,
                            chosen->result->mean_auc});
        }
    }
    return best;
}

std::vector<LongRow> long_rows(const EvaluationReport& report) {
    std::vector<LongRow> rows;
    for (const ReportCell& cell : report.cells) {
        if (cell.skipped()) continue;
        for (std::size_t fold = 0; fold < cell.result->fold_auc.size(); ++fold) {
            LongRow row;
            row.dataset = cell.key.dataset;
            row.resampler = resampler_name(cell.key.resampler);
            row.classifier = classifier_name(cell.key.classifier);
            row.protocol = protocol_name(cell.key.protocol);
            row.fold = fold;
            row.auc = cell.result->fold_auc[fold];
            row.f1 = cell.result->fold_f1[fold];
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_long_csv(const EvaluationReport& report, std::ostream& out) {
    out << "dataset,resampler,classifier,protocol,fold,auc,f1\n";
    for (const LongRow& row : long_rows(report)) {
        out << csv_escape(row.dataset) << ',' << row.resampler << ',' << row.classifier << ','
            << row.protocol << ',' << row.fold << ',' << format_double(row.auc) << ','
            << format_double(row.f1) << '\n';
    }
}

std::vector<LongRow> parse_long_csv(std::istream& in) {
    std::vector<std::string> fields;
    if (!read_csv_record(in, fields)) raise(Errc::IoError, "empty long-form CSV");

    const auto parse_size = [](const std::string& text) {
        std::size_t value = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            raise(Errc::UnparseableCell, "bad integer '" + text + "'");
        }
        return value;
    };
    const auto parse_real = [](const std::string& text) {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            raise(Errc::UnparseableCell, "bad real '" + text + "'");
        }
        return value;
    };

    std::vector<LongRow> rows;
    while (read_csv_record(in, fields)) {
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 7) raise(Errc::UnparseableCell, "long-form row needs 7 fields");
        LongRow row;
        row.dataset = fields[0];
        row.resampler = fields[1];
        row.classifier = fields[2];
        row.protocol = fields[3];
        row.fold = parse_size(fields[4]);
        row.auc = parse_real(fields[5]);
        row.f1 = parse_real(fields[6]);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_wide_csv(const EvaluationReport& report, const std::string& dataset,
                    std::ostream& out) {
    const auto& config = report.config;
    const CellLookup lookup(report);
    const auto protocols = config.selected_protocols();

    out << "method,series";
    for (const ClassifierKind classifier : config.classifiers) {
        out << ',' << classifier_label(classifier);
    }
    out << ",Avg\n";

    const auto emit_row = [&](ResamplerKind resampler, const std::string& series,
                              auto&& value_of) {
        out << resampler_label(resampler) << ',' << series;
        double sum = 0.0;
        std::size_t present = 0;
        for (const ClassifierKind classifier : config.classifiers) {
            const std::optional<double> value = value_of(classifier);
            out << ',';
            if (value) {
                out << format_fixed(*value, 3);
                sum += *value;
                ++present;
            }
        }
        out << ',';
        if (present > 0) out << format_fixed(sum / static_cast<double>(present), 3);
        out << '\n';
    };

    for (const ResamplerKind resampler : kWideRowOrder) {
        const bool in_grid =
            resampler == ResamplerKind::None ||
            std::find(config.resamplers.begin(), config.resamplers.end(), resampler) !=
                config.resamplers.end();
        if (!in_grid) continue;

        for (const Protocol protocol : protocols) {
            emit_row(resampler, protocol_label(protocol),
                     [&](ClassifierKind classifier) -> std::optional<double> {
                         const ReportCell* cell =
                             lookup.find(dataset, resampler, classifier, protocol);
                         if (cell == nullptr || cell->skipped()) return std::nullopt;
                         return cell->result->mean_auc;
                     });
        }
        if (resampler == ResamplerKind::None) continue;
        for (const Protocol protocol : protocols) {
            emit_row(resampler, std::string("% diff (") + protocol_label(protocol) + ")",
                     [&](ClassifierKind classifier) -> std::optional<double> {
                         const ReportCell* cell =
                             lookup.find(dataset, resampler, classifier, protocol);
                         const ReportCell* baseline =
                             lookup.find(dataset, ResamplerKind::None, classifier, protocol);
                         if (cell == nullptr || baseline == nullptr || cell->skipped() ||
                             baseline->skipped()) {
                             return std::nullopt;
                         }
                         return percent_diff(cell->result->mean_auc,
                                             baseline->result->mean_auc);
                     });
        }
    }
}

void write_best_csv(const EvaluationReport& report, std::ostream& out) {
    out << "dataset,best_model,sampling_method,best_auc\n";
    for (const BestCell& best : best_cells(report)) {
        out << csv_escape(best.dataset) << ',' << classifier_label(best.classifier) << ','
            << resampler_label(best.resampler) << ',' << format_fixed(best.auc, 6) << '\n';
    }
}

void write_skipped_csv(const EvaluationReport& report, std::ostream& out) {
    out << "dataset,resampler,classifier,protocol,reason\n";
    for (const ReportCell& cell : report.cells) {
        if (!cell.skipped()) continue;
        out << csv_escape(cell.key.dataset) << ',' << resampler_name(cell.key.resampler) << ','
            << classifier_name(cell.key.classifier) << ',' << protocol_name(cell.key.protocol)
            << ',' << csv_escape(cell.skip_reason) << '\n';
    }
}

namespace {

const char* resampler_color(ResamplerKind kind) {
    switch (kind) {
        case ResamplerKind::None: return "#1f77b4";
        case ResamplerKind::Adasyn: return "#ff7f0e";
        case ResamplerKind::Smote: return "#2ca02c";
        case ResamplerKind::SvmSmote: return "#d62728";
        case ResamplerKind::Ros: return "#9467bd";
        case ResamplerKind::Rus: return "#8c564b";
        case ResamplerKind::ClusterCentroids: return "#e377c2";
    }
    return "#000000";
}

const char* classifier_dash(ClassifierKind kind) {
    switch (kind) {
        case ClassifierKind::LogisticRegression: return "";
        case ClassifierKind::Knn5: return "7 3";
        case ClassifierKind::DecisionTree: return "2 2";
        case ClassifierKind::RandomForest: return "9 3 2 3";
        case ClassifierKind::GaussianNb: return "4 2 1 2";
        case ClassifierKind::Qda: return "12 4";
    }
    return "";
}

}  // namespace

std::string roc_overlay_svg(const EvaluationReport& report, const std::string& dataset,
                            Protocol protocol) {
    constexpr double kPlotX = 70.0;
    constexpr double kPlotY = 50.0;
    constexpr double kPlotSize = 440.0;
    const auto px = [](double fpr) { return kPlotX + fpr * kPlotSize; };
    const auto py = [](double tpr) { return kPlotY + kPlotSize - tpr * kPlotSize; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"560\" "
           "viewBox=\"0 0 840 560\">\n";
    svg << "<rect width=\"840\" height=\"560\" fill=\"white\"/>\n";
    svg << "<text x=\"290\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
           "text-anchor=\"middle\">"
        << dataset << " ROC, " << protocol_label(protocol) << " evaluation</text>\n";

    // Frame and ticks.
    svg << "<rect x=\"" << format_fixed(kPlotX, 2) << "\" y=\"" << format_fixed(kPlotY, 2)
        << "\" width=\"" << format_fixed(kPlotSize, 2) << "\" height=\""
        << format_fixed(kPlotSize, 2) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        const double value = 0.25 * tick;
        svg << "<line x1=\"" << format_fixed(px(value), 2) << "\" y1=\""
            << format_fixed(py(0) + 5, 2) << "\" x2=\"" << format_fixed(px(value), 2)
            << "\" y2=\"" << format_fixed(py(0), 2) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << format_fixed(px(value), 2) << "\" y=\""
            << format_fixed(py(0) + 20, 2)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << format_fixed(value, 2) << "</text>\n";
        svg << "<line x1=\"" << format_fixed(kPlotX - 5, 2) << "\" y1=\""
            << format_fixed(py(value), 2) << "\" x2=\"" << format_fixed(kPlotX, 2)
            << "\" y2=\"" << format_fixed(py(value), 2) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << format_fixed(kPlotX - 10, 2) << "\" y=\""
            << format_fixed(py(value) + 4, 2)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << format_fixed(value, 2) << "</text>\n";
    }
    svg << "<text x=\"" << format_fixed(kPlotX + kPlotSize / 2, 2) << "\" y=\"540\" "
           "font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">False positive "
           "rate</text>\n";
    svg << "<text x=\"20\" y=\"" << format_fixed(kPlotY + kPlotSize / 2, 2)
        << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
           "transform=\"rotate(-90 20 "
        << format_fixed(kPlotY + kPlotSize / 2, 2) << ")\">True positive rate</text>\n";
    svg << "<line x1=\"" << format_fixed(px(0), 2) << "\" y1=\"" << format_fixed(py(0), 2)
        << "\" x2=\"" << format_fixed(px(1), 2) << "\" y2=\"" << format_fixed(py(1), 2)
        << "\" stroke=\"#aaaaaa\" stroke-dasharray=\"3 3\"/>\n";

    for (const ReportCell& cell : report.cells) {
        if (cell.key.dataset != dataset || cell.key.protocol != protocol || cell.skipped()) {
            continue;
        }
        const RocCurve curve = roc_curve(cell.result->pooled);
        svg << "<polyline fill=\"none\" stroke=\"" << resampler_color(cell.key.resampler)
            << "\" stroke-width=\"1.5\"";
        const char* dash = classifier_dash(cell.key.classifier);
        if (dash[0] != '\0') svg << " stroke-dasharray=\"" << dash << "\"";
        svg << " points=\"";
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            if (i > 0) svg << ' ';
            svg << format_fixed(px(curve.points[i].fpr), 2) << ','
                << format_fixed(py(curve.points[i].tpr), 2);
        }
        svg << "\"/>\n";
    }

    // Legend: colors key the resampler, dash patterns the classifier.
    double legend_y = 70.0;
    std::vector<ResamplerKind> sequence{ResamplerKind::None};
    sequence.insert(sequence.end(), report.config.resamplers.begin(),
                    report.config.resamplers.end());
    for (const ResamplerKind resampler : sequence) {
        svg << "<line x1=\"540\" y1=\"" << format_fixed(legend_y - 4, 2)
            << "\" x2=\"570\" y2=\"" << format_fixed(legend_y - 4, 2) << "\" stroke=\""
            << resampler_color(resampler) << "\" stroke-width=\"3\"/>\n";
        svg << "<text x=\"578\" y=\"" << format_fixed(legend_y, 2)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << resampler_label(resampler)
            << "</text>\n";
        legend_y += 18.0;
    }
    legend_y += 12.0;
    for (const ClassifierKind classifier : report.config.classifiers) {
        svg << "<line x1=\"540\" y1=\"" << format_fixed(legend_y - 4, 2)
            << "\" x2=\"570\" y2=\"" << format_fixed(legend_y - 4, 2)
            << "\" stroke=\"black\" stroke-width=\"1.5\"";
        const char* dash = classifier_dash(classifier);
        if (dash[0] != '\0') svg << " stroke-dasharray=\"" << dash << "\"";
        svg << "/>\n";
        svg << "<text x=\"578\" y=\"" << format_fixed(legend_y, 2)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << classifier_label(classifier)
            << "</text>\n";
        legend_y += 18.0;
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string sanitize_name(const std::string& name) {
    std::string safe;
    safe.reserve(name.size());
    for (const char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
        safe.push_back(ok ? c : '_');
    }
    return safe.empty() ? "dataset" : safe;
}

std::vector<std::filesystem::path> emit_report(const EvaluationReport& report,
                                               const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> written;

    const auto write_file = [&](const fs::path& path, const std::string& content) {
        std::ofstream out(path, std::ios::binary);
        if (!out) raise(Errc::IoError, "cannot open '" + path.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) raise(Errc::IoError, "failed writing '" + path.string() + "'");
        written.push_back(path);
    };

    try {
        fs::create_directories(out_dir);
        fs::create_directories(out_dir / "roc");

        std::ostringstream buffer;
        write_long_csv(report, buffer);
        write_file(out_dir / "results_long.csv", buffer.str());

        buffer.str("");
        write_best_csv(report, buffer);
        write_file(out_dir / "best_cells.csv", buffer.str());

        buffer.str("");
        write_skipped_csv(report, buffer);
        write_file(out_dir / "skipped.csv", buffer.str());

        for (const std::string& dataset : report.dataset_names) {
            buffer.str("");
            write_wide_csv(report, dataset, buffer);
            write_file(out_dir / ("wide_" + sanitize_name(dataset) + ".csv"), buffer.str());

            for (const Protocol protocol : report.config.selected_protocols()) {
                write_file(out_dir / ("roc_" + sanitize_name(dataset) + "_" +
                                      protocol_name(protocol) + ".svg"),
                           roc_overlay_svg(report, dataset, protocol));
            }
        }

        for (const ReportCell& cell : report.cells) {
            if (cell.skipped()) continue;
            buffer.str("");
            std::ostringstream roc_buffer;
            write_roc_csv(roc_curve(cell.result->pooled), roc_buffer);
            const std::string file_name = sanitize_name(cell.key.dataset) + "__" +
                                          resampler_name(cell.key.resampler) + "__" +
                                          classifier_name(cell.key.classifier) + "__" +
                                          protocol_name(cell.key.protocol) + ".csv";
            write_file(out_dir / "roc" / file_name, roc_buffer.str());
        }
    } catch (...) {
        std::error_code ec;
        for (const fs::path& path : written) fs::remove(path, ec);
        throw;
    }
    return written;
}

}  // namespace fairfold
