#pragma once

#include <cstdint>
#include <string>

#include "cnoma/oracle.hpp"
#include "cnoma/power_control.hpp"
#include "cnoma/types.hpp"

namespace cnoma {

/// One randomly drawn single-pair problem: gains log-uniform over [-20, 20] dB,
/// p_bs over [0, 50] dB, p_d_max over [0, 40] dB, r_th from {0.5, 1, 2}.
struct PairInstance {
  PairChannels ch{1.0, 1.0, 0.0, 0.0};
  double p_bs = 1.0;
  double p_d_max = 1.0;
  QosSpec qos = QosSpec::from_rate(1.0);
};

/// Deterministic instance generator keyed by (seed, index).
PairInstance draw_pair_instance(std::uint64_t seed, std::uint64_t index);

/// Cross-validation settings: closed-form solver vs. independent grid oracle.
struct VerifySpec {
  int instances = 500;
  SolveMode mode = SolveMode::HD;  ///< HD or FD
  double sum_tol = 1e-4;           ///< allowed |closed-form - grid| sum-rate gap
  double boundary_tol = 1e-6;      ///< boundary proximity excusing feasibility flips
  double max_flip_frac = 1e-3;     ///< allowed fraction of (excused) disagreements
  GridSpec grid{};
  std::uint64_t seed = 424242;
};

struct VerifyReport {
  int instances = 0;
  int closed_feasible = 0;
  int grid_feasible = 0;
  int both_feasible = 0;
  int flips = 0;            ///< feasibility disagreements (any kind)
  int unexcused_flips = 0;  ///< disagreements not near any feasibility boundary
  int gap_failures = 0;     ///< sum-rate gaps beyond sum_tol
  double max_abs_gap = 0.0; ///< max |closed-form - grid| over both-feasible
  double max_qos_violation = 0.0;  ///< worst rate shortfall vs r_th (>= 0)
  bool pass = false;
  std::string detail;  ///< one-line summary for logs
};

/// Runs the cross-validation loop described by `spec`.
VerifyReport verify_against_grid(const VerifySpec& spec);

/// Worst per-user rate shortfall of a decision vs. the QoS target, in
/// bits/s/Hz (0 when both users meet r_th).  `mode` selects HD/FD/NOMA rates.
double qos_shortfall(const PairChannels& ch, const PowerDecision& d, double p_bs,
                     const QosSpec& qos, SolveMode mode);

/// Relative distance from the instance to the nearest analytic feasibility
/// boundary of the given mode (used to excuse borderline disagreements).
double feasibility_boundary_distance(const PairChannels& ch, double p_bs,
                                     double p_d_max, const QosSpec& qos,
                                     SolveMode mode);

}  // namespace cnoma
