#pragma once
// Closed-form per-pair power control: feasibility tests and optimal
// (alpha, p_d) policies for HD relaying, FD relaying, plain NOMA, the
// fixed-relay-power variant, and HD/FD mode selection.
//
// The feasible alpha-window at a given relay power p_d is bounded by three
// curves (all monotone in alpha):
//   alpha_min_decode     — smallest alpha letting the strong user decode the
//                          weak user's message at the QoS SINR;
//   alpha_min_weak_qos   — smallest alpha giving the weak user its QoS SINR
//                          after combining the relayed copy (0 once the relay
//                          link alone covers it);
//   alpha_max_strong_qos — largest alpha leaving the strong user its own QoS
//                          SINR.
// A pair is feasible at p_d iff
//   max(alpha_min_decode, alpha_min_weak_qos) <= alpha_max_strong_qos.

#include "cnoma/types.hpp"

namespace cnoma {

// How the per-pair solver treats the relay and the rate prefactor.
enum class SolveMode { HD, FD, ModeSelect, NOMA };

// Relay transmit-power policy: optimized per pair, or pinned to the budget.
enum class RelayPolicy { Adaptive, Fixed };

// ---- boundary curves of the feasible region (exposed for testing) ----
// `mode` picks the SINR threshold (qos.delta_h vs qos.delta_f) and whether
// self-interference is active.
double alpha_min_decode(const PairChannels& ch, double p_bs, const QosSpec& qos,
                        double p_d, DuplexMode mode);
double alpha_min_weak_qos(const PairChannels& ch, double p_bs, const QosSpec& qos,
                          double p_d, DuplexMode mode);
double alpha_max_strong_qos(const PairChannels& ch, double p_bs, const QosSpec& qos,
                            double p_d, DuplexMode mode);

// ---- HD ----

// Feasibility of HD relaying within relay budget p_d_max.
//   failed_condition: 0 none, 1 BS power below the SINR-window requirement
//   (p_bs gamma_m < delta_h^2 + 2 delta_h), 2 relay budget below the minimum
//   relay power p_min.
struct HdFeasibility {
  bool feasible = false;
  int failed_condition = 0;
  double p_min = 0.0;  // smallest relay power with a nonempty alpha-window
  double p_int = 0.0;  // relay power where the weak-QoS bound meets the
                       // decode bound; spending more cannot help
};
HdFeasibility hd_feasible(const PairChannels& ch, double p_bs, double p_d_max,
                          const QosSpec& qos);

// Optimal HD policy: p_d* = min(p_d_max, p_int); alpha* is the smallest
// alpha feasible at p_d* (clamped into [0, alpha_max_strong_qos]).
PairSolution hd_optimal(const PairChannels& ch, double p_bs, double p_d_max,
                        const QosSpec& qos);

// ---- FD ----

// Discriminants and relay-power breakpoints of the FD feasibility analysis.
FdFeasParams fd_feas_params(const PairChannels& ch, double p_bs,
                            const QosSpec& qos);

// FD feasibility within relay budget p_d_max.
//   condition: index of the first satisfied feasibility condition
//   (1: the infeasible relay-power band ends within the usable budget,
//    2: the band starts above zero so small powers work,
//    3: no infeasible band exists), 0 when infeasible.
struct FdFeasibility {
  bool feasible = false;
  int condition = 0;
};
FdFeasibility fd_feasible(const PairChannels& ch, double p_bs, double p_d_max,
                          const QosSpec& qos);

// Optimal FD policy: evaluates the finite candidate set of relay powers
// (usable-interval endpoints, bound crossings, and the stationary points of
// the sum rate along the active boundary) and picks the best QoS-satisfying
// candidate.
PairSolution fd_optimal(const PairChannels& ch, double p_bs, double p_d_max,
                        const QosSpec& qos);

// ---- NOMA / fixed power / mode selection ----

// Plain NOMA (no relaying): optimal alpha at p_d = 0, full rate prefactor.
// The returned mode field is FD (full-rate slot structure).
PairSolution noma_optimal(const PairChannels& ch, double p_bs, const QosSpec& qos);

// Relay pinned to the full budget p_d = p_d_max; alpha is the smallest value
// feasible there.  Infeasible when the alpha-window at p_d_max is empty.
PairSolution fixed_power_optimal(const PairChannels& ch, double p_bs,
                                 double p_d_max, const QosSpec& qos,
                                 DuplexMode mode);

// Runs hd_optimal and fd_optimal and returns the feasible one with the larger
// sum rate (exact ties -> FD, which saves a time slot at equal rate).
PairSolution mode_select(const PairChannels& ch, double p_bs, double p_d_max,
                         const QosSpec& qos);

// Mode selection over the fixed-relay-power variant (used by experiments).
PairSolution mode_select_fixed(const PairChannels& ch, double p_bs,
                               double p_d_max, const QosSpec& qos);

}  // namespace cnoma
