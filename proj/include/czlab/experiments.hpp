#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "czlab/config.hpp"

namespace czlab {

/// Structured experiment record: pass/fail checks, fitted constants with
/// grid-refinement deltas, and named output tables. Deterministic given the
/// config plus seed; no clocks or environment leak into the payload.
struct ExperimentReport {
  struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string note;
  };
  struct Fitted {
    std::string name;
    double value = 0.0;
    double refined = 0.0;
    double delta_rel = 0.0;
    bool resolved = true;  // delta <= 30%
  };
  struct Table {
    std::string filename;  // e.g. ratios.csv, factorization.json
    std::string content;
  };

  std::string experiment;
  std::string config_hash;
  std::string resolved_config;
  std::vector<Check> checks;
  std::vector<Fitted> fitted;
  std::vector<Table> tables;
  std::vector<std::string> notes;

  bool all_pass() const;
  void write_json(std::ostream& out) const;
};

ExperimentReport run_kernelcheck(const Config& cfg);
ExperimentReport run_boundedness(const Config& cfg);
ExperimentReport run_compactness(const Config& cfg);
ExperimentReport run_factorization(const Config& cfg);
ExperimentReport run_lowerbound(const Config& cfg);

/// Dispatch by experiment name; unknown names raise config errors.
ExperimentReport run_experiment(const std::string& name, const Config& cfg);

/// Writes report.json, config.resolved.ini and every table under out_dir.
/// Returns the process exit code (0 all checks pass, 1 otherwise).
int write_outputs(const ExperimentReport& report, const std::string& out_dir);

}  // namespace czlab
