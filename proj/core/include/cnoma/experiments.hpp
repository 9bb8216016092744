#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cnoma/assignment.hpp"
#include "cnoma/channel.hpp"
#include "cnoma/power_control.hpp"
#include "cnoma/types.hpp"

namespace cnoma {

/// How strong users are matched with weak users in a simulated cell.
enum class PairingPolicy {
  Hungarian,  ///< optimal assignment over the solved cost matrix
  Baseline1,  ///< strongest strong user with weakest weak user (reversed halves)
  Baseline2,  ///< k-th strong user with k-th weak user (aligned halves)
  Random,     ///< uniformly random permutation, fresh per trial
};

/// Which scalar parameter a sweep varies.
enum class SweepAxis { PBs, PdMax, LambdaS, LambdaW, LambdaD, LambdaSi };

/// Full description of a Monte-Carlo sweep: cell size, channel statistics,
/// power budgets, QoS target, solver mode, pairing policy, and the swept axis.
struct Scenario {
  ChannelStats stats{};
  int k = 1;  ///< number of user pairs (2k users)
  SweepAxis axis = SweepAxis::PBs;
  std::vector<double> axis_values;   ///< swept values, linear normalized units
  std::vector<double> axis_display;  ///< same values as written in the config (dB/dBm)
  double p_bs = 1000.0;              ///< base-station budget (linear), used unless swept
  double p_d_max = 1000.0;           ///< relay budget cap (linear), used unless swept
  QosSpec qos = QosSpec::from_rate(1.0);
  int trials = 10000;
  SolveMode mode = SolveMode::ModeSelect;
  PairingPolicy pairing = PairingPolicy::Hungarian;
  RelayPolicy relay_power = RelayPolicy::Adaptive;
};

/// Aggregated sweep output, one entry per axis value.  Means and standard
/// errors are over feasible trials only; infeasible trials are counted.
struct SweepResult {
  std::vector<double> axis;           ///< display units (as configured)
  std::vector<double> mean_sum_rate;  ///< mean network sum rate (bits/s/Hz)
  std::vector<double> std_error;      ///< standard error of the mean
  std::vector<std::int64_t> infeasible;
  int trials = 0;
  std::vector<double> mean_per_pair;  ///< mean_sum_rate / k
};

/// Thrown when a sweep cannot produce statistics, e.g. every trial at some
/// axis value is infeasible.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Outcome of a single Monte-Carlo trial.  A trial is feasible only if the
/// chosen pairing admits a feasible power solution for every pair.
struct TrialOutcome {
  bool feasible = false;
  double total = 0.0;  ///< network sum rate, 0 when infeasible
};

/// Returns the weak-user column paired with each strong-user row m (both
/// halves sorted ascending by gain).  Deterministic for Baseline1/Baseline2;
/// Random draws a fresh uniform permutation keyed by (seed, trial).
std::vector<int> baseline_pairing(PairingPolicy kind, int k, std::uint64_t seed,
                                  std::uint64_t trial = 0);

/// Runs one trial of `sc` at axis position `axis_index` with the network
/// realization keyed by (seed, trial).
TrialOutcome run_trial(const Scenario& sc, std::size_t axis_index, std::uint64_t seed,
                       std::uint64_t trial);

/// Runs the full sweep.  Results are byte-identical for any `threads` >= 1:
/// trials are keyed by counter-based streams and reduced in a fixed order.
/// Throws ScenarioError if some axis value yields zero feasible trials.
SweepResult run_scenario(const Scenario& sc, std::uint64_t seed, int threads = 1);

/// Deterministic pairwise (cascade) summation of x[0..n).
double pairwise_sum(const double* x, std::size_t n);

/// Locale-free shortest decimal with 9 significant digits.
std::string format_sig9(double v);

/// Serializes a sweep result as CSV with a fixed header and row order.
std::string sweep_to_csv(const SweepResult& r);

}  // namespace cnoma
