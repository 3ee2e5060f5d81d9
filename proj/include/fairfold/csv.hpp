#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fairfold/dataset.hpp"

namespace fairfold {

enum class MissingPolicy { DropRow, MeanImpute };

/// Loads an RFC-4180-style CSV (header row required, UTF-8, '.' decimal
/// separator, empty cell = missing value). The label column is matched by
/// name; rows whose label equals positive_value become the positive class,
/// every other non-missing label the negative class. Rows with a missing
/// label are dropped under either policy. All remaining columns must parse
/// as real numbers.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::string& positive_value, MissingPolicy policy);

/// Stream variant of load_csv; `source_name` only decorates error messages.
Dataset load_csv(std::istream& in, const std::string& label_column,
                 const std::string& positive_value, MissingPolicy policy,
                 const std::string& source_name = "<stream>");

/// Splits one RFC-4180 record per call; handles quoted fields, embedded
/// separators and doubled quotes. Returns false at end of input.
bool read_csv_record(std::istream& in, std::vector<std::string>& fields);

/// Full-precision decimal rendering (17 significant digits), locale
/// independent. Round-trips any finite double exactly.
std::string format_double(double value);

/// Fixed-decimal rendering used by the display oriented tables.
std::string format_fixed(double value, int decimals);

}  // namespace fairfold
