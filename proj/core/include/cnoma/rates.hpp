#pragma once
// Achievable-rate formulas for one pair under the three transmission schemes:
// half-duplex relaying (HD), full-duplex relaying (FD), and plain NOMA
// (no relaying).  All three share one SINR geometry:
//
//   T  = (1-alpha) P gm / c          strong user decoding its own message
//   Sm = alpha P gm / ((1-alpha) P gm + c)   strong user decoding the weak
//                                            user's message (before SIC)
//   sn = alpha P gn / ((1-alpha) P gn + 1)   weak user, direct link only
//   W  = p_d gd + sn                 weak user after combining the relayed copy
//
// where c = gamma_si * p_d + 1 is the strong user's effective noise (the
// self-interference term is active only in FD; HD and NOMA have c = 1).
// The weak user's achievable SINR is min(Sm, W): the relay can only forward
// what it decoded.  HD halves both rates (two slots per message); NOMA uses
// p_d = 0 and no relay combining.

#include "cnoma/types.hpp"

namespace cnoma {

// The three SINRs of the relay geometry at a given operating point.
struct SinrTriple {
  double strong_own = 0.0;     // T
  double strong_decode = 0.0;  // Sm
  double weak_combined = 0.0;  // W (= sn when p_d = 0 or gamma_d = 0)
};

// Evaluates the SINR geometry.  `self_interference` is the effective SI gain
// (pass ch.gamma_si for FD, 0 for HD/NOMA).
SinrTriple pair_sinrs(const PairChannels& ch, double alpha, double p_d,
                      double p_bs, double self_interference);

// log2(1 + x), shared by every rate computation in the library.
double rate_from_sinr(double sinr);

RatePair hd_rates(const PairChannels& ch, const PowerDecision& dec, double p_bs);
RatePair fd_rates(const PairChannels& ch, const PowerDecision& dec, double p_bs);
RatePair noma_rates(const PairChannels& ch, double alpha, double p_bs);

// Pair sum rate for an arbitrary operating point of the unified geometry.
// `prefactor` is the per-slot rate share (0.5 for HD, 1 for FD/NOMA).
double pair_sum_rate(const PairChannels& ch, double alpha, double p_d,
                     double p_bs, double self_interference, double prefactor);

// True when both users' SINR requirements hold at the operating point:
// T >= delta - tol and min(Sm, W) >= delta - tol.
bool qos_satisfied(const PairChannels& ch, double alpha, double p_d,
                   double p_bs, double self_interference, double delta,
                   double tol = 0.0);

}  // namespace cnoma
