#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "optokerr/harness/config.hpp"

namespace optokerr::harness {

struct RunOptions {
  std::string output_dir;  ///< overrides ExperimentConfig::output when non-empty
  unsigned threads = 1;
};

/// One table row; `status` is "ok" or an ErrorKind name.
struct Row {
  std::vector<double> values;
  std::string status = "ok";
};

struct Table {
  std::string curve;
  std::vector<std::string> columns;  ///< excluding the trailing status column
  std::vector<Row> rows;
};

struct RunResult {
  std::vector<std::string> artifacts;
  std::size_t evaluated = 0;  ///< sweep points or curves
  std::size_t failed = 0;
  std::vector<std::string> messages;

  bool all_failed() const noexcept { return evaluated > 0 && failed == evaluated; }
};

/// Evaluates one sweep axis for every curve of the config; rows are in axis
/// order regardless of the thread count. Point failures are kept in-row.
std::vector<Table> sweep(const ExperimentConfig& config, const SweepAxis& axis, unsigned threads = 1);

/// Runs the config and writes CSV tables plus a JSON sidecar into the output
/// directory. Throws Error(Config) or Error(Io).
RunResult run(const ExperimentConfig& config, const RunOptions& options = {});

/// CSV text of a table, with comment header lines.
std::string table_to_csv(const Table& t, const std::vector<std::string>& header_comments);

}  // namespace optokerr::harness
