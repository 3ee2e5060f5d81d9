#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fairfold/report.hpp"

namespace fairfold {

/// Parses command-line arguments (program name excluded) into a validated
/// config. A `--config file` holds line-oriented key=value pairs using the
/// same keys as the long flags; explicit flags override file entries, and
/// the FAIRFOLD_SEED environment variable replaces only the built-in default
/// seed. Returns nullopt when --help was requested (text goes to help_out).
std::optional<ExperimentConfig> parse_config(const std::vector<std::string>& args,
                                             std::ostream& help_out);

/// Runs the configured grid, prints one line per cell plus the artifact
/// paths, and writes every report artifact under config.out_dir. Returns 0
/// on success; on error prints a diagnostic (including any cells skipped up
/// to that point) and returns nonzero.
int cli_run(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

ResamplerKind parse_resampler(const std::string& token);
ClassifierKind parse_classifier(const std::string& token);

}  // namespace fairfold
