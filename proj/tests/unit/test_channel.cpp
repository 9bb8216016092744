#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "cnoma/channel.hpp"

using namespace cnoma;

namespace {
doctest::Approx near(double v, double rel = 1e-13) {
  return doctest::Approx(v).epsilon(rel);
}
}  // namespace

TEST_CASE("philox block function matches the published reference vectors") {
  {
    const auto out = philox4x32({0u, 0u, 0u, 0u}, {0u, 0u});
    CHECK(out[0] == 0x6627e8d5u);
    CHECK(out[1] == 0xe169c58du);
    CHECK(out[2] == 0xbc57ac4cu);
    CHECK(out[3] == 0x9b00dbd8u);
  }
  {
    const auto out = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                {0xffffffffu, 0xffffffffu});
    CHECK(out[0] == 0x408f276du);
    CHECK(out[1] == 0x41c83b0eu);
    CHECK(out[2] == 0xa20bc7c6u);
    CHECK(out[3] == 0x6d5451fdu);
  }
  {
    const auto out = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                {0xa4093822u, 0x299f31d0u});
    CHECK(out[0] == 0xd16cfe09u);
    CHECK(out[1] == 0x94fdccebu);
    CHECK(out[2] == 0x5001e420u);
    CHECK(out[3] == 0x24126ea1u);
  }
}

TEST_CASE("random streams are deterministic pure functions of their key") {
  const RandomStream a(42, 7, streams::kD2d);
  const RandomStream b(42, 7, streams::kD2d);
  for (std::uint64_t i = 0; i < 32; ++i) {
    CHECK(a.u01(i) == b.u01(i));
    CHECK(a.u01(i) >= 0.0);
    CHECK(a.u01(i) < 1.0);
  }
  // Out-of-order access yields the same values as sequential access.
  CHECK(a.u01(31) == b.u01(31));
  CHECK(a.u01(0) == b.u01(0));
}

TEST_CASE("distinct seeds, trials, and streams give distinct draws") {
  const RandomStream base(42, 7, streams::kD2d);
  CHECK(base.u01(0) != RandomStream(43, 7, streams::kD2d).u01(0));
  CHECK(base.u01(0) != RandomStream(42, 8, streams::kD2d).u01(0));
  CHECK(base.u01(0) != RandomStream(42, 7, streams::kSelfInterference).u01(0));
  CHECK(base.u01(0) != base.u01(1));
}

TEST_CASE("exponential draws follow the inverse-cdf transform exactly") {
  const RandomStream rs(5, 1, streams::kWeakGains);
  for (std::uint64_t i = 0; i < 16; ++i) {
    const double mean = 0.25 + static_cast<double>(i);
    CHECK(rs.exponential(i, mean) == -mean * std::log1p(-rs.u01(i)));
    CHECK(rs.exponential(i, mean) >= 0.0);
  }
}

TEST_CASE("exponential draws have the configured mean") {
  const RandomStream rs(9, 0, streams::kGeneric);
  const int n = 20000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rs.exponential(static_cast<std::uint64_t>(i), 2.5);
  CHECK(sum / n == doctest::Approx(2.5).epsilon(0.04));
}

TEST_CASE("sampled networks have the right shape and ordering") {
  const ChannelStats stats{10.0, 1.0, 2.0, 0.5};
  const NetworkRealization net = sample_network(stats, 4, 123, 9);
  CHECK(net.k == 4);
  CHECK(net.virtual_users == 0);
  REQUIRE(net.g.size() == 8);
  REQUIRE(net.d.size() == 16);
  REQUIRE(net.s.size() == 4);
  CHECK(std::is_sorted(net.g.begin(), net.g.end()));
  for (double v : net.g) CHECK(v > 0.0);
  CHECK(net.d2d(2, 3) == net.d[2 * 4 + 3]);

  // Same key -> identical realization; different trial -> different gains.
  const NetworkRealization same = sample_network(stats, 4, 123, 9);
  CHECK(same.g == net.g);
  CHECK(same.d == net.d);
  CHECK(same.s == net.s);
  CHECK(sample_network(stats, 4, 123, 10).g != net.g);
}

TEST_CASE("sampled gains follow the configured channel statistics") {
  const int k = 700;
  const NetworkRealization net = sample_network(ChannelStats{}, k, 31415);
  // Default stats: lambda_s = 10, lambda_w = 1, lambda_d = 1, lambda_si = 1.
  const double g_sum = std::accumulate(net.g.begin(), net.g.end(), 0.0);
  CHECK(g_sum / k == doctest::Approx(11.0).epsilon(0.09));
  const double d_mean =
      std::accumulate(net.d.begin(), net.d.end(), 0.0) / (double(k) * k);
  CHECK(d_mean == doctest::Approx(1.0).epsilon(0.02));
  const double s_mean = std::accumulate(net.s.begin(), net.s.end(), 0.0) / k;
  CHECK(s_mean == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("changing one channel mean rescales only that link population") {
  ChannelStats a;  // lambda_si = 1
  ChannelStats b = a;
  b.lambda_si = 4.0;
  const NetworkRealization na = sample_network(a, 6, 2718, 3);
  const NetworkRealization nb = sample_network(b, 6, 2718, 3);
  CHECK(na.g == nb.g);  // common random numbers: direct gains untouched
  CHECK(na.d == nb.d);
  for (std::size_t i = 0; i < na.s.size(); ++i) {
    CHECK(nb.s[i] == 4.0 * na.s[i]);  // exact: scaling by a power of two
  }
}

TEST_CASE("explicit gain lists are sorted and padded to an even user count") {
  const NetworkRealization net =
      realization_from_gains({5.0, 1.0, 3.0}, ChannelStats{}, 99);
  CHECK(net.k == 2);
  CHECK(net.virtual_users == 1);
  CHECK(net.g == std::vector<double>{0.0, 1.0, 3.0, 5.0});
  CHECK(net.d.size() == 4);
  CHECK(net.s.size() == 2);

  const NetworkRealization even =
      realization_from_gains({2.0, 1.0}, ChannelStats{}, 99);
  CHECK(even.k == 1);
  CHECK(even.virtual_users == 0);
  CHECK(even.g == std::vector<double>{1.0, 2.0});
}

TEST_CASE("gain lists are validated") {
  CHECK_THROWS_AS(realization_from_gains({}, ChannelStats{}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(realization_from_gains({1.0, -0.5}, ChannelStats{}, 1),
                  std::invalid_argument);
}

TEST_CASE("sample_network validates its arguments") {
  CHECK_THROWS_AS(sample_network(ChannelStats{}, 0, 1), std::invalid_argument);
  ChannelStats bad;
  bad.lambda_d = 0.0;
  CHECK_THROWS_AS(sample_network(bad, 2, 1), std::invalid_argument);
}

TEST_CASE("db and dbm conversions") {
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(db_to_linear(10.0) == near(10.0));
  CHECK(db_to_linear(-10.0) == near(0.1));
  CHECK(db_to_linear(6.0) == near(3.9810717055349722));
  CHECK(dbm_to_linear_normalized(0.0, 0.0) == 1.0);
  CHECK(dbm_to_linear_normalized(30.0, 0.0) == near(1000.0));
  // 30 dBm over a -100 dBm noise floor: 130 dB of headroom.
  CHECK(dbm_to_linear_normalized(30.0, -100.0) == near(1.0e13));
}
