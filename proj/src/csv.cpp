#include "fairfold/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>

namespace fairfold {

namespace {

std::string trim_ascii(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::optional<double> parse_cell(const std::string& raw) {
    const std::string cell = trim_ascii(raw);
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        raise(Errc::UnparseableCell, "cell '" + cell + "' is not a finite real number");
    }
    return value;
}

}  // namespace

bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == EOF) return false;

    std::string field;
    bool quoted = false;
    for (;;) {
        const int raw = in.get();
        if (raw == EOF) {
            fields.push_back(field);
            return true;
        }
        const char c = static_cast<char>(raw);
        if (quoted) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    quoted = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                quoted = true;
                break;
            case ',':
                fields.push_back(field);
                field.clear();
                break;
            case '\r':
                if (in.peek() == '\n') in.get();
                fields.push_back(field);
                return true;
            case '\n':
                fields.push_back(field);
                return true;
            default:
                field.push_back(c);
        }
    }
}

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::string& positive_value, MissingPolicy policy) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::IoError, "cannot open '" + path.string() + "'");
    return load_csv(in, label_column, positive_value, policy, path.string());
}

Dataset load_csv(std::istream& in, const std::string& label_column,
                 const std::string& positive_value, MissingPolicy policy,
                 const std::string& source_name) {
    std::vector<std::string> header;
    if (!read_csv_record(in, header) || header.empty()) {
        raise(Errc::IoError, "no header row in '" + source_name + "'");
    }
    // Strip a UTF-8 BOM if the file starts with one.
    if (!header[0].empty() && header[0].size() >= 3 &&
        static_cast<unsigned char>(header[0][0]) == 0xEF &&
        static_cast<unsigned char>(header[0][1]) == 0xBB &&
        static_cast<unsigned char>(header[0][2]) == 0xBF) {
        header[0].erase(0, 3);
    }
    for (auto& name : header) name = trim_ascii(name);

    std::size_t label_index = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column) {
            label_index = j;
            break;
        }
    }
    if (label_index == header.size()) {
        raise(Errc::MissingColumn, "label column '" + label_column + "' not found in '" +
                                       source_name + "'");
    }

    std::vector<std::string> feature_names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != label_index) feature_names.push_back(header[j]);
    }
    const std::size_t n_features = feature_names.size();

    struct PendingRow {
        std::vector<std::optional<double>> cells;
        bool positive = false;
        bool has_missing = false;
    };
    std::vector<PendingRow> pending;

    std::vector<std::string> fields;
    std::size_t file_row = 1;
    while (read_csv_record(in, fields)) {
        ++file_row;
        if (fields.size() == 1 && trim_ascii(fields[0]).empty()) continue;  // blank line
        if (fields.size() != header.size()) {
            raise(Errc::UnparseableCell,
                  "row " + std::to_string(file_row) + " of '" + source_name + "' has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
        }
        const std::string label_cell = trim_ascii(fields[label_index]);
        if (label_cell.empty()) continue;  // missing label: row unusable under any policy

        PendingRow row;
        row.positive = (label_cell == positive_value);
        row.cells.reserve(n_features);
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j == label_index) continue;
            std::optional<double> value;
            try {
                value = parse_cell(fields[j]);
            } catch (const Error&) {
                raise(Errc::UnparseableCell,
                      "row " + std::to_string(file_row) + ", column '" +
                          header[j] + "' of '" + source_name + "': cell '" +
                          trim_ascii(fields[j]) + "' is not a real number");
            }
            if (!value.has_value()) row.has_missing = true;
            row.cells.push_back(value);
        }
        pending.push_back(std::move(row));
    }

    if (policy == MissingPolicy::MeanImpute) {
        std::vector<double> sums(n_features, 0.0);
        std::vector<std::size_t> counts(n_features, 0);
        for (const auto& row : pending) {
            for (std::size_t j = 0; j < n_features; ++j) {
                if (row.cells[j]) {
                    sums[j] += *row.cells[j];
                    ++counts[j];
                }
            }
        }
        for (std::size_t j = 0; j < n_features; ++j) {
            bool column_needed = false;
            for (const auto& row : pending) {
                if (!row.cells[j]) {
                    column_needed = true;
                    break;
                }
            }
            if (column_needed && counts[j] == 0) {
                raise(Errc::InvalidValue, "column '" + feature_names[j] + "' of '" +
                                              source_name + "' has no values to impute from");
            }
        }
        for (auto& row : pending) {
            for (std::size_t j = 0; j < n_features; ++j) {
                if (!row.cells[j]) row.cells[j] = sums[j] / static_cast<double>(counts[j]);
            }
            row.has_missing = false;
        }
    }

    Dataset data(n_features, feature_names, positive_value);
    std::vector<double> values(n_features);
    for (const auto& row : pending) {
        if (row.has_missing) continue;  // DropRow
        for (std::size_t j = 0; j < n_features; ++j) values[j] = *row.cells[j];
        data.append_row(values, row.positive);
    }

    if (data.rows() == 0) {
        raise(Errc::EmptyAfterPolicy, "no usable rows left in '" + source_name + "'");
    }
    if (!data.both_classes_present()) {
        raise(Errc::SingleClass, "'" + source_name + "' holds a single class after loading");
    }
    return data;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_fixed(double value, int decimals) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
    return buffer;
}

}  // namespace fairfold
