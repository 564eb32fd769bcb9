#pragma once

// Batch experiment orchestration: run the online algorithm (fractional or
// integer) over a list of instance files, certify each run, optionally
// compare against the offline oracle, and emit JSON/CSV reports.
//
// Config file schema (strict; unknown fields rejected):
//   {"instances": ["a.json", ...],        // paths, relative to the cwd
//    "mode": "fractional" | "integer",
//    "alpha": r,                          // optional: override instance alpha
//    "delta": r,                          // optional: override default discount
//    "oracle": b}                         // optional: compute offline OPT (default false)
//
// Instances in a batch run concurrently (capped by the NLPD_THREADS env var);
// rows are assembled by instance index, so reports are deterministic.
// Per-instance failures are recorded in the row and never abort the batch.

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nlpd/model.hpp"

namespace nlpd::exp {

struct ExperimentConfig {
  std::vector<std::string> instances;
  Mode mode = Mode::Fractional;
  std::optional<double> alpha_override;
  std::optional<double> delta;
  bool oracle = false;
};

// One row per instance. `error` is empty on success; a failed row keeps
// whatever fields were computed before the failure (others stay NaN/false).
struct ExperimentRow {
  std::string instance;
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double on = std::numeric_limits<double>::quiet_NaN();
  double dual = std::numeric_limits<double>::quiet_NaN();
  double ratio = std::numeric_limits<double>::quiet_NaN();       // on / dual
  double bound = std::numeric_limits<double>::quiet_NaN();       // proven ratio bound
  bool certified = false;
  bool psi_check = false;
  double opt = std::numeric_limits<double>::quiet_NaN();         // oracle OPT (if requested)
  double opt_ratio = std::numeric_limits<double>::quiet_NaN();   // on / opt
  double wall_ms = std::numeric_limits<double>::quiet_NaN();
  std::string error;
};

// Aggregate over certified rows sharing the same alpha.
struct AlphaAggregate {
  double alpha = 0.0;
  int count = 0;
  double min_ratio = 0.0;
  double median_ratio = 0.0;
  double max_ratio = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::vector<AlphaAggregate> aggregates;  // sorted by alpha
};

// Parse a config file's text. Throws std::invalid_argument on schema errors.
ExperimentConfig parse_config(const std::string& text);

// Run the batch. Never throws for per-instance failures (recorded in rows);
// throws only if the config itself is unusable.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Serialize. JSON carries a "schema": 1 version field and round-trips
// losslessly; CSV has a fixed header and 12-significant-digit ratio columns.
std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

// 0 = all rows certified, 1 = some row uncertified, 2 = some row errored.
int report_exit_code(const ExperimentReport& report);

// Parallelism cap: NLPD_THREADS env var if set and positive, else hardware
// concurrency, always at least 1.
unsigned thread_budget();

}  // namespace nlpd::exp
