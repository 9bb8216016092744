#pragma once
// Flat `key = value` configuration format shared by the command-line tools:
// one assignment per line, `#` starts a comment, keys carry explicit unit
// suffixes (_db, _dbm, _bpshz) and are converted to linear normalized units
// while building the typed problem descriptions below.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnoma/experiments.hpp"
#include "cnoma/types.hpp"
#include "cnoma/verify.hpp"

namespace cnoma {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

struct ConfigEntry {
  std::string value;
  int line = 0;  ///< 1-based source line; 0 marks a command-line override
};

using ConfigMap = std::map<std::string, ConfigEntry>;

/// Parses the text of a config file.  Throws ConfigError on malformed lines
/// and on duplicate keys (naming both line numbers).
ConfigMap parse_config_text(const std::string& text);

/// Reads and parses a config file; throws ConfigError if unreadable.
ConfigMap load_config_file(const std::string& path);

/// Applies `key=value` strings (e.g. from --set flags) on top of a parsed
/// map; overrides replace file values without a duplicate-key error.
void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides);

/// Builds a Monte-Carlo sweep scenario.  Exactly one of the sweepable keys
/// (p_bs_dbm, p_d_max_dbm, lambda_*_db) may hold a comma-separated list,
/// which becomes the sweep axis; with no list the scenario is a single-point
/// sweep over p_bs.  Unknown keys are rejected.
Scenario scenario_from_config(const ConfigMap& map);

/// A single-pair problem for the solve-pair tool.
struct PairProblem {
  PairChannels ch{1.0, 1.0, 0.0, 0.0};
  double p_bs = 1000.0;
  double p_d_max = 1000.0;
  QosSpec qos = QosSpec::from_rate(1.0);
  SolveMode mode = SolveMode::ModeSelect;
  RelayPolicy relay_power = RelayPolicy::Adaptive;
};

/// Builds a single-pair problem; gamma_m_db and gamma_n_db are required,
/// gamma_d_db / gamma_si_db default to zero linear gain when absent.
PairProblem pair_from_config(const ConfigMap& map);

/// A one-shot network solve: either explicit user gains (odd counts are
/// padded with a zero-gain virtual user) or k sampled pairs.
struct NetworkProblem {
  Scenario scenario;               ///< axis is a single point; trials unused
  std::vector<double> user_gains;  ///< linear; empty -> sample k pairs
};
NetworkProblem network_from_config(const ConfigMap& map);

/// Settings of the verify tool (solver vs. grid-oracle cross-check).
struct VerifyRun {
  VerifySpec spec{};     ///< instances/tolerances/grid resolution
  bool run_hd = true;
  bool run_fd = true;
};
VerifyRun verify_from_config(const ConfigMap& map);

/// Settings of the bench tool.
struct BenchRun {
  std::vector<int> k_values{10, 20, 50, 100, 150, 200, 250};
  int reps = 5;
  Scenario scenario;  ///< channel statistics / budgets / mode for the timed solves
};
BenchRun bench_from_config(const ConfigMap& map);

}  // namespace cnoma
