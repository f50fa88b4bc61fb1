#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hpwan/cc/bbr1.h"
#include "hpwan/cc/bbr3.h"
#include "hpwan/cc/congestion_control.h"
#include "hpwan/cc/cubic.h"
#include "hpwan/cc/windowed_filter.h"
#include "test_path.h"

namespace hpwan {
namespace {

using testing::LossySink;
using testing::Path;

constexpr uint32_t kMss = kDefaultMss;

RateSample AckOf(uint64_t bytes, SimTime rtt) {
  RateSample rs;
  rs.acked_bytes = bytes;
  rs.rtt = rtt;
  rs.srtt = rtt;
  return rs;
}

Transfer::CcFactory Engine(CcKind kind, CcParams params = {}) {
  return [=](uint32_t, RngStream* rng) {
    return MakeCongestionControl(kind, params, kMss, rng);
  };
}

TEST(CcNamesTest, RoundTrip) {
  for (CcKind k : {CcKind::kCubic, CcKind::kBbr1, CcKind::kBbr3}) {
    EXPECT_EQ(ParseCcKind(CcName(k)), k);
  }
  EXPECT_THROW(ParseCcKind("reno"), std::invalid_argument);
}

TEST(CubicTest, ClosedFormAnchors) {
  const double k = CubicK(100, 0.7, 0.4);
  EXPECT_NEAR(k, 4.217, 5e-4);
  EXPECT_NEAR(CubicWindow(0, k, 100, 0.4), 70.0, 1e-9);
  EXPECT_NEAR(CubicWindow(k, k, 100, 0.4), 100.0, 1e-12);
  EXPECT_NEAR(CubicWindow(k + 1, k, 100, 0.4), 100.4, 1e-9);
}

TEST(CubicTest, LossFrom200Segments) {
  Cubic cubic(CubicParams{}, kMss);
  cubic.OnAck(AckOf(190 * kMss, Milliseconds(14)), Milliseconds(14));
  ASSERT_DOUBLE_EQ(cubic.cwnd_segments(), 200.0);
  cubic.OnLoss(kMss, Milliseconds(20), Milliseconds(30));
  EXPECT_DOUBLE_EQ(cubic.cwnd_segments(), 140.0);
  EXPECT_DOUBLE_EQ(cubic.w_max_segments(), 200.0);
  EXPECT_NEAR(cubic.k_seconds(), 5.313, 5e-4);
  EXPECT_EQ(cubic.cwnd_bytes(), 140u * kMss);
  EXPECT_FALSE(cubic.in_slow_start());
}

TEST(CubicTest, OneReductionPerWindow) {
  Cubic cubic(CubicParams{}, kMss);
  cubic.OnAck(AckOf(190 * kMss, Milliseconds(14)), Milliseconds(14));
  cubic.OnLoss(kMss, Milliseconds(20), Milliseconds(30));
  // Another segment from the same flight.
  cubic.OnLoss(kMss, Milliseconds(21), Milliseconds(31));
  EXPECT_DOUBLE_EQ(cubic.cwnd_segments(), 140.0);
  // A segment sent after the reduction is a new congestion event.
  cubic.OnLoss(kMss, Milliseconds(40), Milliseconds(55));
  EXPECT_DOUBLE_EQ(cubic.cwnd_segments(), 98.0);
  EXPECT_DOUBLE_EQ(cubic.w_max_segments(), 140.0);
}

TEST(CubicTest, CeMarkReducesLikeLoss) {
  Cubic by_loss(CubicParams{}, kMss);
  Cubic by_ce(CubicParams{}, kMss);
  for (Cubic* c : {&by_loss, &by_ce}) {
    c->OnAck(AckOf(190 * kMss, Milliseconds(14)), Milliseconds(14));
  }
  by_loss.OnLoss(kMss, Milliseconds(20), Milliseconds(30));
  by_ce.OnCe(Milliseconds(20), Milliseconds(30));
  EXPECT_DOUBLE_EQ(by_ce.cwnd_segments(), by_loss.cwnd_segments());
  EXPECT_DOUBLE_EQ(by_ce.w_max_segments(), by_loss.w_max_segments());
  EXPECT_DOUBLE_EQ(by_ce.k_seconds(), by_loss.k_seconds());
}

TEST(CubicTest, CeIgnoredWithoutEcn) {
  CubicParams params;
  params.ecn = false;
  Cubic cubic(params, kMss);
  cubic.OnAck(AckOf(190 * kMss, Milliseconds(14)), Milliseconds(14));
  cubic.OnCe(Milliseconds(20), Milliseconds(30));
  EXPECT_DOUBLE_EQ(cubic.cwnd_segments(), 200.0);
}

TEST(CubicTest, GrowthFollowsTheCurveBetweenLosses) {
  CubicParams params;
  params.tcp_friendly = false;
  Cubic cubic(params, kMss);
  cubic.OnAck(AckOf(990 * kMss, Milliseconds(14)), Milliseconds(14));
  const SimTime loss_at = Milliseconds(30);
  cubic.OnLoss(kMss, loss_at, loss_at);
  const double k = CubicK(1000, 0.7, 0.4);
  for (SimTime t = loss_at; t < loss_at + Seconds(12); t += 100'000) {
    cubic.OnAck(AckOf(kMss, Milliseconds(14)), t);
    const double w = CubicWindow(ToSeconds(t - loss_at), k, 1000, 0.4);
    ASSERT_NEAR(cubic.cwnd_segments(), std::max(w, 700.0), 1.0)
        << ToSeconds(t - loss_at);
  }
}

TEST(CubicTest, TcpFriendlyRegionIsAFloor) {
  Cubic cubic(CubicParams{}, kMss);
  cubic.OnAck(AckOf(8 * kMss, Milliseconds(100)), Milliseconds(100));
  cubic.OnLoss(kMss, Milliseconds(100), Milliseconds(100));
  // Small window, long RTT: the Reno-like estimate dominates.
  for (SimTime t = Milliseconds(100); t < Seconds(20); t += Milliseconds(10)) {
    cubic.OnAck(AckOf(kMss, Milliseconds(100)), t);
    ASSERT_GE(cubic.cwnd_segments() + 1e-9, cubic.TcpFriendlySegments(t));
    ASSERT_GE(cubic.cwnd_segments() + 1e-9, cubic.CurveSegments(t));
  }
}

TEST(CubicTest, TimeoutCollapsesToOneSegment) {
  Cubic cubic(CubicParams{}, kMss);
  cubic.OnAck(AckOf(190 * kMss, Milliseconds(14)), Milliseconds(14));
  cubic.OnRto(Seconds(1));
  EXPECT_EQ(cubic.cwnd_bytes(), kMss);
  EXPECT_TRUE(cubic.in_slow_start());
}

RateSample BandwidthSample(double rate_bps, SimTime rtt, uint64_t delivered) {
  RateSample rs;
  rs.interval = Milliseconds(10);
  rs.delivered_delta_bytes =
      static_cast<uint64_t>(rate_bps / 8 * ToSeconds(rs.interval));
  rs.acked_bytes = kMss;
  rs.rtt = rtt;
  rs.srtt = rtt;
  rs.delivered = delivered;
  rs.prior_delivered = delivered;
  return rs;
}

TEST(Bbr1Test, CruiseWindowIsTwiceTheBdp) {
  RngStream rng("bbr", 1);
  Bbr1 bbr(Bbr1Params{}, kMss, &rng);
  bbr.OnAck(BandwidthSample(20e9, Milliseconds(14), kMss), Milliseconds(14));
  ASSERT_NEAR(bbr.max_bw_bps(), 20e9, 1.0);
  ASSERT_EQ(bbr.min_rtt(), Milliseconds(14));
  // 20e9 * 0.014 / 8 = 35 MB
  EXPECT_EQ(bbr.Inflight(bbr.max_bw_bps(), 1.0), 35'000'000u);
  EXPECT_EQ(bbr.Inflight(bbr.max_bw_bps(), 2.0), 70'000'000u);
  EXPECT_EQ(bbr.Inflight(bbr.max_bw_bps(), Bbr1Params{}.cwnd_gain), 70'000'000u);
}

TEST(Bbr1Test, LossDoesNotTouchTheModel) {
  RngStream rng("bbr", 1);
  Bbr1 bbr(Bbr1Params{}, kMss, &rng);
  bbr.OnAck(BandwidthSample(5e9, Milliseconds(14), kMss), Milliseconds(14));
  const double bw = bbr.max_bw_bps();
  const SimTime rtt = bbr.min_rtt();
  const uint64_t cwnd = bbr.cwnd_bytes();
  const double pacing = bbr.pacing_rate_bps();
  for (int i = 0; i < 100; ++i) {
    bbr.OnLoss(kMss, Milliseconds(14), Milliseconds(15 + i));
  }
  EXPECT_EQ(bbr.max_bw_bps(), bw);
  EXPECT_EQ(bbr.min_rtt(), rtt);
  EXPECT_EQ(bbr.cwnd_bytes(), cwnd);
  EXPECT_EQ(bbr.pacing_rate_bps(), pacing);
}

TEST(Bbr1Test, StartupGainAndCycle) {
  RngStream rng("bbr", 1);
  Bbr1 bbr(Bbr1Params{}, kMss, &rng);
  EXPECT_EQ(bbr.mode(), BbrMode::kStartup);
  EXPECT_NEAR(bbr.pacing_gain(), 2.0 / std::log(2.0), 1e-3);
  const std::vector<double> cycle(std::begin(Bbr1::kPacingGainCycle),
                                  std::end(Bbr1::kPacingGainCycle));
  EXPECT_EQ(cycle, (std::vector<double>{1.25, 0.75, 1, 1, 1, 1, 1, 1}));
}

// Steady state on a real 20G path with 14 ms RTT.
TEST(Bbr1Test, ConvergesToTheBottleneckOnAPath) {
  Path path(Milliseconds(7));
  auto t = path.Make(3'000'000'000ULL, 1, Engine(CcKind::kBbr1));
  t->Start(0);
  path.sim.RunUntil();
  ASSERT_TRUE(t->complete());
  const auto& bbr = dynamic_cast<const Bbr1&>(t->flow_cc(0));
  EXPECT_EQ(bbr.mode(), BbrMode::kProbeBw);
  EXPECT_TRUE(bbr.full_bw_reached());
  // Goodput of 9038-byte frames carrying 8960 bytes at 20 Gb/s.
  const double goodput = 20e9 * kMss / testing::kWire;
  EXPECT_NEAR(bbr.max_bw_bps() / goodput, 1.0, 0.01);
  EXPECT_GE(bbr.min_rtt(), Milliseconds(14));
  EXPECT_LT(bbr.min_rtt(), Milliseconds(14) + 20'000);
}

struct Episode {
  SimTime start;
  SimTime end;
  uint64_t max_cwnd;
  uint64_t min_cwnd;
};

TEST(Bbr1Test, ProbeRttEveryTenSecondsAtFourSegments) {
  Path path(Milliseconds(7), 2'000'000'000ULL);
  auto t = path.Make(7'000'000'000ULL, 1, Engine(CcKind::kBbr1));
  std::vector<Episode> episodes;
  t->set_ack_observer([&](const Transfer::AckView& v) {
    const auto& cc = dynamic_cast<const Bbr1&>(v.cc);
    const bool in = cc.mode() == BbrMode::kProbeRtt;
    if (in) {
      if (episodes.empty() || episodes.back().end >= 0) {
        episodes.push_back({v.now, -1, 0, UINT64_MAX});
      }
      episodes.back().max_cwnd =
          std::max(episodes.back().max_cwnd, cc.cwnd_bytes());
      episodes.back().min_cwnd =
          std::min(episodes.back().min_cwnd, cc.cwnd_bytes());
    } else if (!episodes.empty() && episodes.back().end < 0) {
      episodes.back().end = v.now;
    }
  });
  t->Start(0);
  path.sim.RunUntil();
  ASSERT_TRUE(t->complete());
  ASSERT_GT(ToSeconds(t->Fct()), 25.0);
  ASSERT_GE(episodes.size(), 2u);
  for (size_t i = 0; i < episodes.size(); ++i) {
    const Episode& e = episodes[i];
    ASSERT_GE(e.end, 0);
    EXPECT_EQ(e.max_cwnd, 4u * kMss) << i;
    EXPECT_EQ(e.min_cwnd, 4u * kMss) << i;
    EXPECT_GE(e.end - e.start, Milliseconds(200) + Milliseconds(14)) << i;
    if (i > 0) {
      const double gap = ToSeconds(e.start - episodes[i - 1].start);
      EXPECT_NEAR(gap, 10.0, 1.0) << i;
    }
  }
}

TEST(Bbr1Test, BandwidthEstimateTracksDeliveryUnderRandomLoss) {
  Path path(Milliseconds(7), 2'000'000'000ULL);
  std::mt19937_64 gen(3);
  std::bernoulli_distribution lose(0.01);
  LossySink sink(&path.pool, [&](const Packet&) { return lose(gen); });
  auto t = path.Make(1'500'000'000ULL, 1, Engine(CcKind::kBbr1), &sink);
  t->Start(0);
  path.sim.RunUntil();
  ASSERT_TRUE(t->complete());
  const auto& bbr = dynamic_cast<const Bbr1&>(t->flow_cc(0));
  const double available = 2e9 * kMss / testing::kWire * (1 - 0.01);
  EXPECT_NEAR(bbr.max_bw_bps() / available, 1.0, 0.05);
}

TEST(Bbr3Test, ProbeRttKeepsHalfTheBdp) {
  Path path(Milliseconds(7), 2'000'000'000ULL);
  auto t = path.Make(3'000'000'000ULL, 1, Engine(CcKind::kBbr3));
  int episodes = 0;
  bool was_in = false;
  uint64_t checked = 0;
  uint64_t below = 0;
  t->set_ack_observer([&](const Transfer::AckView& v) {
    const auto& cc = dynamic_cast<const Bbr3&>(v.cc);
    const bool in = cc.mode() == BbrMode::kProbeRtt;
    if (in && !was_in) ++episodes;
    was_in = in;
    if (in) {
      ++checked;
      const double half_bdp =
          0.5 * cc.max_bw_bps() / 8 * ToSeconds(cc.min_rtt());
      below += cc.cwnd_bytes() + 1 < half_bdp;
      EXPECT_EQ(cc.cwnd_bytes(), cc.ProbeRttCwnd());
    }
  });
  t->Start(0);
  path.sim.RunUntil();
  ASSERT_TRUE(t->complete());
  EXPECT_GE(episodes, 2);
  EXPECT_GT(checked, 0u);
  EXPECT_EQ(below, 0u);
}

TEST(Bbr3Test, ProbeRttWindowArithmetic) {
  RngStream rng("bbr3", 1);
  Bbr3 bbr(Bbr3Params{}, kMss, &rng);
  bbr.OnAck(BandwidthSample(20e9, Milliseconds(14), kMss), Milliseconds(14));
  ASSERT_NEAR(bbr.max_bw_bps(), 20e9, 1.0);
  EXPECT_EQ(bbr.ProbeRttCwnd(), 17'500'000u);
  EXPECT_EQ(bbr.Bdp(bbr.max_bw_bps(), 1.0), 35'000'000u);
}

TEST(Bbr3Test, WindowRespectsInflightHiWhenBounded) {
  Path path(Milliseconds(5), 2'000'000'000ULL);
  std::mt19937_64 gen(8);
  std::bernoulli_distribution lose(0.03);
  LossySink sink(&path.pool, [&](const Packet&) { return lose(gen); });
  auto t = path.Make(300'000'000ULL, 1, Engine(CcKind::kBbr3), &sink);
  uint64_t bounded = 0;
  uint64_t violations = 0;
  t->set_ack_observer([&](const Transfer::AckView& v) {
    const auto& cc = dynamic_cast<const Bbr3&>(v.cc);
    if (cc.inflight_hi() == Bbr3::kUnbounded) return;
    ++bounded;
    violations += cc.cwnd_bytes() > cc.inflight_hi();
  });
  t->Start(0);
  path.sim.RunUntil();
  ASSERT_TRUE(t->complete());
  EXPECT_GT(bounded, 1000u);
  EXPECT_EQ(violations, 0u);
}

// Loss clustered in bursts: each packet starts a burst with small
// probability and a burst drops the next few packets.
class BurstLoss {
 public:
  BurstLoss(double target, int burst, uint64_t seed)
      : gen_(seed), start_(target / burst), burst_(burst) {}
  bool operator()(const Packet&) {
    if (left_ > 0) {
      --left_;
      return true;
    }
    if (start_(gen_)) {
      left_ = burst_ - 1;
      return true;
    }
    return false;
  }

 private:
  std::mt19937_64 gen_;
  std::bernoulli_distribution start_;
  int burst_;
  int left_ = 0;
};

double TimeAveragedPacing(CcKind kind) {
  Path path(Milliseconds(5), 2'000'000'000ULL);
  BurstLoss loss(0.03, 5, 21);
  LossySink sink(&path.pool, std::ref(loss));
  auto t = path.Make(500'000'000ULL, 1, Engine(kind), &sink);
  double area = 0;
  SimTime last = -1;
  double last_rate = 0;
  t->set_ack_observer([&](const Transfer::AckView& v) {
    if (last >= 0) area += last_rate * ToSeconds(v.now - last);
    last = v.now;
    last_rate = std::min(v.cc.pacing_rate_bps(), 1e12);
  });
  t->Start(0);
  path.sim.RunUntil();
  return area / ToSeconds(last);
}

TEST(Bbr3Test, BurstyLossLowersPacingBelowBbr1) {
  const double v1 = TimeAveragedPacing(CcKind::kBbr1);
  const double v3 = TimeAveragedPacing(CcKind::kBbr3);
  EXPECT_LT(v3, v1);
}

TEST(EngineTest, OutputsStayFiniteAndPositive) {
  std::mt19937_64 gen(17);
  for (CcKind kind : {CcKind::kCubic, CcKind::kBbr1, CcKind::kBbr3}) {
    RngStream rng("fuzz", 3);
    auto cc = MakeCongestionControl(kind, CcParams{}, kMss, &rng);
    uint64_t delivered = 0;
    SimTime now = 0;
    for (int i = 0; i < 200'000; ++i) {
      now += 1 + gen() % 200'000;
      const int what = gen() % 100;
      if (what < 90) {
        RateSample rs;
        rs.acked_bytes = (gen() % 4) * kMss;
        rs.prior_delivered = delivered;
        delivered += rs.acked_bytes;
        rs.delivered = delivered;
        rs.delivered_delta_bytes = gen() % (64 * kMss);
        rs.interval = gen() % 3 == 0 ? 0 : 1 + gen() % Milliseconds(30);
        rs.rtt = 1 + gen() % Milliseconds(40);
        rs.srtt = rs.rtt;
        rs.is_app_limited = gen() % 10 == 0;
        rs.prior_inflight = gen() % (1000 * kMss);
        rs.inflight = rs.prior_inflight;
        rs.tx_in_flight = rs.prior_inflight;
        rs.lost = gen() % 5 == 0 ? gen() % (20 * kMss) : 0;
        rs.newly_lost_bytes = rs.lost;
        cc->OnAck(rs, now);
      } else if (what < 97) {
        cc->OnLoss(kMss, now - static_cast<SimTime>(gen() % Milliseconds(20)),
                   now);
      } else if (what < 99) {
        cc->OnCe(now - 1000, now);
      } else {
        cc->OnRto(now);
      }
      const double pacing = cc->pacing_rate_bps();
      ASSERT_GT(cc->cwnd_bytes(), 0u) << CcName(kind) << " step " << i;
      ASSERT_GT(pacing, 0.0) << CcName(kind) << " step " << i;
      ASSERT_FALSE(std::isnan(pacing)) << CcName(kind);
      if (kind != CcKind::kCubic) ASSERT_TRUE(std::isfinite(pacing));
    }
  }
}

TEST(WindowedFilterTest, MatchesBruteForceMax) {
  std::mt19937_64 gen(4);
  WindowedMaxFilter<double> filter(10);
  std::vector<std::pair<int64_t, double>> history;
  int64_t time = 0;
  for (int i = 0; i < 5000; ++i) {
    time += gen() % 3;
    const double v = static_cast<double>(gen() % 1000);
    filter.Update(v, time);
    history.push_back({time, v});
    double best = 0;
    for (const auto& [t, x] : history) {
      if (time - t <= 10) best = std::max(best, x);
    }
    // The three-sample estimator never reports more than the true window
    // max, and never less than the newest sample.
    ASSERT_LE(filter.Best(), best);
    ASSERT_GE(filter.Best(), v);
  }
}

}  // namespace
}  // namespace hpwan
