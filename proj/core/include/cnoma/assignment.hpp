#pragma once
// Outer pairing problem: minimum-cost perfect matching between the strong and
// weak user halves over the per-pair optimal sum rates (Hungarian method),
// plus the network-level solve that builds the cost matrix and extracts the
// matched pairs' power solutions.

#include <stdexcept>
#include <string>
#include <vector>

#include "cnoma/channel.hpp"
#include "cnoma/power_control.hpp"
#include "cnoma/types.hpp"

namespace cnoma {

// Square cost matrix for the assignment step.  Entries are negated pair sum
// rates; +inf marks an infeasible pair (handled natively by the matcher, not
// via big-M substitution).
struct CostMatrix {
  std::vector<double> entries;  // row-major k x k
  int k = 0;

  CostMatrix() = default;
  explicit CostMatrix(int k_)
      : entries(static_cast<std::size_t>(k_) * k_, 0.0), k(k_) {}
  double& at(int m, int n) { return entries[static_cast<std::size_t>(m) * k + n]; }
  double at(int m, int n) const {
    return entries[static_cast<std::size_t>(m) * k + n];
  }
};

// A perfect matching: pairing[m] is the weak-half index assigned to
// strong-half index m; total_rate is the summed rate of the matched pairs.
struct Assignment {
  std::vector<int> pairing;
  double total_rate = 0.0;
};

// Thrown when no perfect matching over finite entries exists.
class InfeasibleNetworkError : public std::runtime_error {
 public:
  explicit InfeasibleNetworkError(std::vector<int> rows)
      : std::runtime_error(describe(rows)), unmatched_rows_(std::move(rows)) {}
  const std::vector<int>& unmatched_rows() const { return unmatched_rows_; }

 private:
  static std::string describe(const std::vector<int>& rows);
  std::vector<int> unmatched_rows_;
};

// Minimum-cost perfect matching via the shortest-augmenting-path (potentials)
// formulation, O(k^3).  total_rate of the returned assignment is the negated
// matched cost, i.e. the summed pair rates.  Throws InfeasibleNetworkError
// when some rows cannot be matched over finite entries.
Assignment hungarian(const CostMatrix& cost);

// Network-level configuration for cost-matrix construction.
struct SystemConfig {
  double p_bs = 1.0;
  double p_d_max = 0.0;
  QosSpec qos;
  SolveMode mode = SolveMode::ModeSelect;
  RelayPolicy relay_power = RelayPolicy::Adaptive;
};

// Per-pair solver dispatch on (mode, relay policy).
PairSolution solve_pair_policy(const PairChannels& ch, double p_bs,
                               double p_d_max, const QosSpec& qos,
                               SolveMode mode, RelayPolicy relay);

// Power solution of the pair (strong m, weak n) of a realization, including
// the single-user policy for pairs whose weak slot is a virtual (zero-gain)
// padding user.
PairSolution solve_network_pair(const NetworkRealization& net,
                                const SystemConfig& cfg, int m, int n);

// Fills the k x k cost matrix (negated pair sum rates, +inf if infeasible).
// The fill is embarrassingly parallel; `threads` caps the worker count and
// has no effect on the result.
CostMatrix build_cost_matrix(const NetworkRealization& net,
                             const SystemConfig& cfg, int threads = 1);

struct NetworkSolution {
  Assignment assignment;
  std::vector<PairSolution> pair_solutions;  // indexed by strong-half index
};

// Cost-matrix fill + Hungarian matching + per-pair solution extraction.
NetworkSolution solve_network(const NetworkRealization& net,
                              const SystemConfig& cfg, int threads = 1);

}  // namespace cnoma
