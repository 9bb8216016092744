#include "cnoma/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cnoma {

namespace {

// Philox-4x32 multipliers and Weyl key increments (fixed, documented
// constants of the algorithm; identical across platforms).
constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) {
  const std::uint64_t prod = std::uint64_t(a) * std::uint64_t(b);
  hi = static_cast<std::uint32_t>(prod >> 32);
  lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> x,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMult0, x[0], hi0, lo0);
    mulhilo(kMult1, x[2], hi1, lo1);
    x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return x;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t trial,
                           std::uint32_t stream_id)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)},
      counter_prefix_{static_cast<std::uint32_t>(trial),
                      static_cast<std::uint32_t>(trial >> 32), stream_id} {}

double RandomStream::u01(std::uint64_t index) const {
  const std::array<std::uint32_t, 4> counter{
      counter_prefix_[0], counter_prefix_[1], counter_prefix_[2],
      static_cast<std::uint32_t>(index >> 1)};
  const std::array<std::uint32_t, 4> out = philox4x32(counter, key_);
  const int w = static_cast<int>(index & 1) * 2;
  const std::uint64_t bits =
      (std::uint64_t(out[w]) << 32) | std::uint64_t(out[w + 1]);
  return static_cast<double>(bits) * 0x1.0p-64;
}

double RandomStream::exponential(std::uint64_t index, double mean) const {
  return -mean * std::log1p(-u01(index));
}

NetworkRealization sample_network(const ChannelStats& stats, int k,
                                  std::uint64_t seed, std::uint64_t trial) {
  if (k < 1) throw std::invalid_argument("sample_network: k must be >= 1");
  if (!(stats.lambda_s > 0.0 && stats.lambda_w > 0.0 && stats.lambda_d > 0.0 &&
        stats.lambda_si > 0.0)) {
    throw std::invalid_argument("sample_network: channel means must be > 0");
  }
  NetworkRealization net;
  net.k = k;
  net.g.reserve(2 * static_cast<std::size_t>(k));
  const RandomStream weak(seed, trial, streams::kWeakGains);
  const RandomStream strong(seed, trial, streams::kStrongGains);
  for (int i = 0; i < k; ++i) net.g.push_back(weak.exponential(i, stats.lambda_w));
  for (int i = 0; i < k; ++i)
    net.g.push_back(strong.exponential(i, stats.lambda_s));
  std::sort(net.g.begin(), net.g.end());

  const RandomStream d2d(seed, trial, streams::kD2d);
  net.d.resize(static_cast<std::size_t>(k) * k);
  for (std::size_t i = 0; i < net.d.size(); ++i) {
    net.d[i] = d2d.exponential(i, stats.lambda_d);
  }
  const RandomStream si(seed, trial, streams::kSelfInterference);
  net.s.resize(k);
  for (int i = 0; i < k; ++i) net.s[i] = si.exponential(i, stats.lambda_si);
  return net;
}

NetworkRealization realization_from_gains(std::vector<double> gains,
                                          const ChannelStats& stats,
                                          std::uint64_t seed,
                                          std::uint64_t trial) {
  if (gains.empty()) {
    throw std::invalid_argument("realization_from_gains: no gains given");
  }
  for (double g : gains) {
    if (!(std::isfinite(g) && g >= 0.0)) {
      throw std::invalid_argument(
          "realization_from_gains: gains must be finite and >= 0");
    }
  }
  int virtual_users = 0;
  if (gains.size() % 2 != 0) {
    gains.push_back(0.0);
    virtual_users = 1;
  }
  const int k = static_cast<int>(gains.size() / 2);
  std::sort(gains.begin(), gains.end());

  NetworkRealization net;
  net.k = k;
  net.virtual_users = virtual_users;
  net.g = std::move(gains);
  const RandomStream d2d(seed, trial, streams::kD2d);
  net.d.resize(static_cast<std::size_t>(k) * k);
  for (std::size_t i = 0; i < net.d.size(); ++i) {
    net.d[i] = d2d.exponential(i, stats.lambda_d);
  }
  const RandomStream si(seed, trial, streams::kSelfInterference);
  net.s.resize(k);
  for (int i = 0; i < k; ++i) net.s[i] = si.exponential(i, stats.lambda_si);
  return net;
}

double db_to_linear(double x_db) { return std::pow(10.0, x_db / 10.0); }

double dbm_to_linear_normalized(double x_dbm, double noise_floor_dbm) {
  return std::pow(10.0, (x_dbm - noise_floor_dbm) / 10.0);
}

}  // namespace cnoma
