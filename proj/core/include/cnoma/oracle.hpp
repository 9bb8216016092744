#pragma once
// Independent brute-force verifiers: a grid search over the (alpha, p_d) box
// for per-pair power control, and exhaustive enumeration of all K! pairings
// for small K.  Used to validate the closed-form solvers; deliberately shares
// no solution logic with them (only the rate formulas).

#include <vector>

#include "cnoma/types.hpp"

namespace cnoma {

// Resolution of the grid search.
struct GridSpec {
  int alpha_points = 2001;
  int pd_points = 2001;
  int refine_rounds = 3;
  double refine_shrink = 0.05;
};

// Grid search over [0,1] x [0, p_d_max].  Scans the base grid column by
// column (per relay-power column the feasible alpha-window is computed
// exactly by bisection, since all three SINR constraints are monotone in
// alpha), keeps the best QoS-satisfying point, runs refine_rounds of local
// refinement around the incumbent, and finishes with a golden-section polish
// along the relay-power axis.  Returns infeasible iff no scanned point
// satisfies QoS.  Deterministic; ties resolved toward the lowest
// (alpha, p_d) pair.
PairSolution grid_optimal(const PairChannels& ch, double p_bs, double p_d_max,
                          const QosSpec& qos, DuplexMode mode,
                          const GridSpec& spec = {});

// Result of exhaustive pairing enumeration.  `pairing[m]` is the weak-half
// index matched to strong-half index m.  `found` is false when every
// permutation contains an infeasible pair.
struct ExhaustiveResult {
  std::vector<int> pairing;
  double total = 0.0;
  bool found = false;
};

// Enumerates all K! strong<->weak assignments of a K x K sum-rate matrix
// (row-major, rates[m*k + n] = sum rate of strong m with weak n; -inf marks
// an infeasible pair, and permutations containing one are excluded).
// Guarded to K <= 9.
ExhaustiveResult exhaustive_pairing(const std::vector<double>& rates, int k);

}  // namespace cnoma
