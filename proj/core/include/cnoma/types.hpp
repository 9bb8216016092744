#pragma once
// Basic value types shared across the cooperative-NOMA solver library.
//
// Conventions used throughout:
//  * all channel gains and power budgets are linear and noise-normalized
//    (receiver noise power = 1), so "power" and "SNR" coincide;
//  * within a pair, the strong user is the one with the larger direct-link
//    gain; the weak user's message is allocated the fraction `alpha` of the
//    base-station power and may additionally be relayed over the D2D link.

#include <cmath>
#include <optional>
#include <stdexcept>

namespace cnoma {

// Relay operation mode of the strong user.
enum class DuplexMode { HD, FD };

// Linear power gains of one candidate pair.  Construction enforces the
// strong/weak labeling convention gamma_m >= gamma_n by swapping if needed.
struct PairChannels {
  double gamma_m = 0.0;   // BS -> strong user
  double gamma_n = 0.0;   // BS -> weak user
  double gamma_d = 0.0;   // D2D strong -> weak
  double gamma_si = 0.0;  // residual self-interference at the strong user

  PairChannels() = default;
  PairChannels(double bs_to_strong, double bs_to_weak, double d2d,
               double self_interference = 0.0)
      : gamma_m(bs_to_strong),
        gamma_n(bs_to_weak),
        gamma_d(d2d),
        gamma_si(self_interference) {
    if (!(std::isfinite(gamma_m) && std::isfinite(gamma_n) &&
          std::isfinite(gamma_d) && std::isfinite(gamma_si)) ||
        gamma_m < 0.0 || gamma_n < 0.0 || gamma_d < 0.0 || gamma_si < 0.0) {
      throw std::invalid_argument("PairChannels: gains must be finite and >= 0");
    }
    if (gamma_m < gamma_n) std::swap(gamma_m, gamma_n);
  }
};

// A point in the per-pair power box: BS power split and D2D relay power.
struct PowerDecision {
  double alpha = 0.0;  // fraction of BS power on the weak user's message, in [0,1]
  double p_d = 0.0;    // D2D relay transmit power, linear, >= 0
};

// Achievable rates of the two users of a pair, bits/s/Hz.
struct RatePair {
  double r_strong = 0.0;
  double r_weak = 0.0;
  double sum() const { return r_strong + r_weak; }
};

// Minimum-rate requirement and the derived SINR thresholds for each mode.
// HD spends two slots per message, hence the squared-rate exponent.
struct QosSpec {
  double r_th = 0.0;     // per-user minimum rate, bits/s/Hz
  double delta_h = 0.0;  // 2^(2 r_th) - 1
  double delta_f = 0.0;  // 2^(r_th) - 1

  static QosSpec from_rate(double r_th) {
    if (!(std::isfinite(r_th)) || r_th < 0.0) {
      throw std::invalid_argument("QosSpec: r_th must be finite and >= 0");
    }
    QosSpec q;
    q.r_th = r_th;
    q.delta_h = std::exp2(2.0 * r_th) - 1.0;
    q.delta_f = std::exp2(r_th) - 1.0;
    return q;
  }
};

// Discriminants and relay-power breakpoints of the FD feasibility analysis.
// b1/b3 are the lower/upper roots of the weak-user feasibility quadratic and
// absent when delta1 < 0 (no real intersection); b2 is the crossing of the
// two lower alpha-bounds below the pole of the relayed-rate bound.
struct FdFeasParams {
  double delta1 = 0.0;
  double delta2 = 0.0;
  std::optional<double> b1;
  std::optional<double> b3;
  std::optional<double> b2;
  bool degenerate = false;  // gamma_si == 0 or gamma_d == 0: breakpoints collapse
};

// Outcome of a per-pair power-control solve.
struct PairSolution {
  bool feasible = false;
  PowerDecision decision;  // meaningful only when feasible
  RatePair rates;          // meaningful only when feasible
  double sum_rate = 0.0;   // rates.sum() when feasible, 0 otherwise
  DuplexMode mode = DuplexMode::HD;
};

}  // namespace cnoma
