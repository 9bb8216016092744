#pragma once
// Random channel generation for Monte-Carlo trials: exponentially distributed
// power gains (Rayleigh amplitudes), deterministic counter-based random
// streams, and dB/dBm conversions.
//
// Reproducibility contract: every random quantity is produced by the
// Philox-4x32-10 block cipher keyed by (seed, trial index, stream id, draw
// index), so any trial can be regenerated in isolation and results do not
// depend on execution order or thread count.

#include <array>
#include <cstdint>
#include <vector>

namespace cnoma {

// Mean linear power gains of the four link populations.
struct ChannelStats {
  double lambda_s = 10.0;   // BS -> strong-half users
  double lambda_w = 1.0;    // BS -> weak-half users
  double lambda_d = 1.0;    // D2D links
  double lambda_si = 1.0;   // residual self-interference
};

// One sampled network: 2K direct-link gains sorted ascending (weak half =
// first K, strong half = last K), the K x K D2D gain matrix, and K
// self-interference gains.  `virtual_users` counts zero-gain padding users
// inserted to even out an odd user count; they occupy the lowest g slots.
struct NetworkRealization {
  int k = 0;
  int virtual_users = 0;
  std::vector<double> g;  // size 2k, ascending
  std::vector<double> d;  // row-major k x k: [strong m][weak n]
  std::vector<double> s;  // size k

  double d2d(int m, int n) const {
    return d[static_cast<std::size_t>(m) * k + n];
  }
};

// One application of the Philox-4x32 block function with 10 rounds.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

// Stream identifiers keyed into the counter so every random quantity of a
// trial has its own independent substream.
namespace streams {
inline constexpr std::uint32_t kWeakGains = 0;
inline constexpr std::uint32_t kStrongGains = 1;
inline constexpr std::uint32_t kD2d = 2;
inline constexpr std::uint32_t kSelfInterference = 3;
inline constexpr std::uint32_t kPairing = 4;
inline constexpr std::uint32_t kGeneric = 5;
}  // namespace streams

// Indexed access to one (seed, trial, stream) substream.  Stateless: the i-th
// draw is a pure function of the key, so draws may be generated in any order.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t stream_id);

  // i-th uniform double in [0, 1).
  double u01(std::uint64_t index) const;

  // i-th exponential draw with the given mean (inverse-CDF transform).
  double exponential(std::uint64_t index, double mean) const;

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 3> counter_prefix_;  // trial lo, trial hi, stream
};

// Draws K weak-half and K strong-half direct gains, sorts their concatenation
// ascending, and draws the K x K D2D matrix and K self-interference gains.
// Fully determined by (stats, k, seed, trial).
NetworkRealization sample_network(const ChannelStats& stats, int k,
                                  std::uint64_t seed, std::uint64_t trial = 0);

// Builds a realization from explicitly given direct-link gains (linear).
// An odd gain count is padded with one zero-gain virtual user; gains are
// sorted ascending; D2D and self-interference gains are sampled from
// (stats, seed, trial).
NetworkRealization realization_from_gains(std::vector<double> gains,
                                          const ChannelStats& stats,
                                          std::uint64_t seed,
                                          std::uint64_t trial = 0);

// Standard conversions; dBm values are normalized by the noise floor so the
// linear result is a noise-normalized SNR budget.
double db_to_linear(double x_db);
double dbm_to_linear_normalized(double x_dbm, double noise_floor_dbm);

}  // namespace cnoma
