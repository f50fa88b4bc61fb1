#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hpwan/net/forwarder.h"
#include "hpwan/net/link.h"
#include "hpwan/net/microburst.h"
#include "hpwan/net/queue.h"

namespace hpwan {
namespace {

Packet DataPacket(uint32_t wire, Ecn ecn = Ecn::kEct0) {
  Packet p;
  p.wire_bytes = wire;
  p.payload_bytes = wire - kDefaultFramingBytes;
  p.seq_end = p.payload_bytes;
  p.ecn = ecn;
  return p;
}

TEST(LinkTest, JumboFrameAt100GbpsWith7msPropagation) {
  Link link(100'000'000'000ULL, Milliseconds(7));
  // 9038 * 8 / 100e9 s = 723.04 ns, floored to whole ns with carry.
  EXPECT_EQ(link.Transmit(9038, 0), 723 + 7 * kNsPerMs);
}

TEST(LinkTest, ZeroPropagationIsSerializationOnly) {
  Link link(10'000'000'000ULL, 0);
  EXPECT_EQ(link.Transmit(1250, 100), 100 + 1000);
}

TEST(LinkTest, BackToBackPacketsKeepFifoSpacing) {
  Link link(100'000'000'000ULL, Milliseconds(1));
  const SimTime a = link.Transmit(9038, 0);
  const SimTime b = link.Transmit(9038, 0);
  EXPECT_GE(b, a + 723);
}

TEST(LinkTest, SerializationClockHasNoCumulativeDrift) {
  for (auto rounding : {SerializationClock::Rounding::kDown,
                        SerializationClock::Rounding::kUp}) {
    SerializationClock clock(20'000'000'000ULL, rounding);
    SimTime total = 0;
    constexpr int kPackets = 1'000'000;
    for (int i = 0; i < kPackets; ++i) total += clock.Next(9038);
    // Exact: 9038 * 8 / 20e9 s = 3615.2 ns per packet.
    EXPECT_EQ(total, static_cast<SimTime>(3615.2 * kPackets));
  }
}

TEST(LinkTest, RoundingUpNeverRunsAheadOfTheRate) {
  SerializationClock up(20'000'000'000ULL, SerializationClock::Rounding::kUp);
  SerializationClock down(20'000'000'000ULL);
  SimTime t_up = 0;
  SimTime t_down = 0;
  for (int k = 1; k <= 1000; ++k) {
    t_up += up.Next(9038);
    t_down += down.Next(9038);
    const double exact = 3615.2 * k;
    ASSERT_GE(t_up, exact - 1e-6);
    ASSERT_LT(t_up, exact + 1.0);
    ASSERT_LE(t_down, exact + 1e-6);
    ASSERT_GT(t_down, exact - 1.0);
  }
}

TEST(QueueTest, EmptyQueueAccepts) {
  const uint64_t bdp = 35'000'000;
  Queue q(8 * bdp, bdp);
  Packet p = DataPacket(9038);
  EXPECT_EQ(q.Enqueue(1, p), EnqueueResult::kAccepted);
  EXPECT_EQ(q.occupancy_bytes(), 9038u);
  EXPECT_EQ(p.ecn, Ecn::kEct0);
}

TEST(QueueTest, MarksEctAboveOneBdp) {
  const uint64_t bdp = 100'000;
  Queue q(8 * bdp, bdp);
  Packet filler = DataPacket(9038, Ecn::kNotEct);
  while (q.occupancy_bytes() + 9038 <= bdp) {
    ASSERT_EQ(q.Enqueue(0, filler), EnqueueResult::kAccepted);
  }
  Packet p = DataPacket(9038);
  EXPECT_EQ(q.Enqueue(1, p), EnqueueResult::kAcceptedWithCe);
  EXPECT_EQ(p.ecn, Ecn::kCe);
  EXPECT_EQ(q.ce_marks(), 1u);
}

TEST(QueueTest, NeverMarksNotEct) {
  Queue q(1'000'000, 0);
  Packet p = DataPacket(9038, Ecn::kNotEct);
  EXPECT_EQ(q.Enqueue(1, p), EnqueueResult::kAccepted);
  EXPECT_EQ(p.ecn, Ecn::kNotEct);
  EXPECT_EQ(q.ce_marks(), 0u);
}

TEST(QueueTest, FullQueueDropsAndKeepsOccupancy) {
  Queue q(2 * 9038, Queue::kUnlimited);
  Packet p = DataPacket(9038);
  q.Enqueue(1, p);
  q.Enqueue(2, p);
  ASSERT_EQ(q.occupancy_bytes(), q.capacity_bytes());
  EXPECT_EQ(q.Enqueue(3, p), EnqueueResult::kDropped);
  EXPECT_EQ(q.occupancy_bytes(), 2u * 9038);
  EXPECT_EQ(q.drops(), 1u);
  EXPECT_EQ(*q.Dequeue(), 1u);
  EXPECT_EQ(*q.Dequeue(), 2u);
  EXPECT_FALSE(q.Dequeue().has_value());
}

TEST(ForwarderTest, DpdkIsConstantTwoMicroseconds) {
  RngStream rng("fwd", 1);
  const ForwarderParams params = ForwarderParams::DpdkDefaults();
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(ForwarderDelay(params, rng), 2 * kNsPerUs);
  }
  EXPECT_TRUE(Forwarder(params).IsPureDelay());
}

TEST(ForwarderTest, LinuxWithZeroSigmaIsTheMedian) {
  RngStream rng("fwd", 1);
  ForwarderParams params = ForwarderParams::LinuxDefaults();
  params.sigma = 0.0;
  for (int i = 0; i < 1000; ++i) {
    ASSERT_EQ(ForwarderDelay(params, rng), 20 * kNsPerUs);
  }
}

TEST(ForwarderTest, LinuxDefaultsAreHeavyTailed) {
  RngStream rng("fwd", 2);
  const ForwarderParams params = ForwarderParams::LinuxDefaults();
  std::vector<SimTime> samples(1'000'000);
  for (auto& s : samples) {
    s = ForwarderDelay(params, rng);
    ASSERT_GE(s, 0);
    ASSERT_LE(s, 5 * kNsPerMs);
  }
  std::sort(samples.begin(), samples.end());
  const double median = samples[samples.size() / 2];
  const double p99 = samples[samples.size() * 99 / 100];
  EXPECT_NEAR(median, 20'000, 200);
  EXPECT_GT(p99, 10 * median);
}

TEST(ForwarderTest, OutputPreservesInputOrder) {
  RngStream rng("fwd", 3);
  Forwarder fwd(ForwarderParams::LinuxDefaults());
  SimTime last = 0;
  for (int i = 0; i < 100'000; ++i) {
    const auto out = fwd.Admit(static_cast<SimTime>(i) * 1000, rng);
    ASSERT_TRUE(out.has_value());
    ASSERT_GE(*out, last);
    last = *out;
  }
}

TEST(ForwarderTest, OverloadFillsRingAndDrops) {
  RngStream rng("fwd", 4);
  ForwarderParams params = ForwarderParams::LinuxDefaults();
  params.ring_slots = 64;
  Forwarder fwd(params);
  // Offered 2 Mpps against a 1.2 Mpps core.
  int drops = 0;
  for (int i = 0; i < 10'000; ++i) {
    drops += !fwd.Admit(static_cast<SimTime>(i) * 500, rng).has_value();
  }
  EXPECT_GT(drops, 0);
  EXPECT_EQ(fwd.drops(), static_cast<uint64_t>(drops));
  EXPECT_LE(fwd.backlog(), 64u);
}

// Independent fluid model of a shallow buffer hit by Poisson cross-traffic
// bursts, sampled at the arrival instants of a paced VC flow.
double FluidLossOracle(double buffer_bytes, double bursts_per_s,
                       double mean_burst_bytes, double drain_bps,
                       double vc_rate_bps, uint32_t wire, double horizon_s,
                       uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> gap(bursts_per_s);
  std::exponential_distribution<double> size(1.0 / mean_burst_bytes);
  const double spacing = wire * 8.0 / vc_rate_bps;
  double next_burst = gap(gen);
  double residue = 0.0;
  double last = 0.0;
  uint64_t packets = 0;
  uint64_t lost = 0;
  for (double t = 0.0; t < horizon_s; t += spacing) {
    while (next_burst <= t) {
      residue = std::max(0.0, residue - (next_burst - last) * drain_bps / 8);
      residue += size(gen);
      last = next_burst;
      next_burst += gap(gen);
    }
    residue = std::max(0.0, residue - (t - last) * drain_bps / 8);
    last = t;
    ++packets;
    if (residue + wire > buffer_bytes) ++lost;
  }
  return static_cast<double>(lost) / packets;
}

TEST(MicroburstTest, DisabledAlwaysPasses) {
  RngStream rng("mb", 1);
  MicroburstParams params;
  params.enabled = false;
  params.burst_rate_per_s = 1e6;
  MicroburstLossModel model(params, &rng);
  for (int i = 0; i < 10'000; ++i) {
    ASSERT_EQ(model.Step(9038, static_cast<SimTime>(i) * 3615, 0),
              MicroburstVerdict::kPass);
  }
}

TEST(MicroburstTest, NoBurstsNoDrops) {
  RngStream rng("mb", 1);
  MicroburstParams params;
  params.burst_rate_per_s = 0;
  MicroburstLossModel model(params, &rng);
  for (int i = 0; i < 1'000'000; ++i) {
    ASSERT_EQ(model.Step(9038, static_cast<SimTime>(i) * 3615, 9038),
              MicroburstVerdict::kPass);
  }
}

TEST(MicroburstTest, DefaultLossRateMatchesFluidOracle) {
  const MicroburstParams params;
  constexpr double kVcRate = 20e9;
  const double oracle = FluidLossOracle(
      params.shallow_buffer_bytes, params.burst_rate_per_s,
      params.mean_burst_bytes, params.line_rate_bps, kVcRate, 9038, 2000.0, 99);
  EXPECT_GE(oracle, 1e-5);
  EXPECT_LE(oracle, 1e-3);

  RngStream rng("mb", 5);
  MicroburstLossModel model(params, &rng);
  uint64_t lost = 0;
  uint64_t packets = 0;
  SerializationClock pace(static_cast<uint64_t>(kVcRate));
  SimTime t = 0;
  while (t < Seconds(2000)) {
    ++packets;
    lost += model.Step(9038, t, 0) == MicroburstVerdict::kDropped;
    t += pace.Next(9038);
  }
  const double rate = static_cast<double>(lost) / packets;
  EXPECT_GE(rate, 1e-5);
  EXPECT_LE(rate, 1e-3);
  // Both are Monte Carlo estimates of ~4000 bursts; agree within 20%.
  EXPECT_NEAR(rate / oracle, 1.0, 0.2);
  // Drops come in clusters inside bursts: far fewer bursts than drops.
  EXPECT_GT(static_cast<double>(lost) / model.bursts(), 1.0);
}

TEST(MicroburstTest, ResidueDelayIsBoundedByBufferOverLineRate) {
  RngStream rng("mb", 6);
  MicroburstParams params;
  params.burst_rate_per_s = 5000;
  MicroburstLossModel model(params, &rng);
  const double bound_ns =
      params.shallow_buffer_bytes * 8.0 / params.line_rate_bps * 1e9;
  for (SimTime t = 0; t < Seconds(1); t += 3615) {
    if (model.Step(9038, t, 0) == MicroburstVerdict::kPass) {
      // Cross bytes physically ahead of an admitted packet fit in the buffer.
      const double ahead = std::min(model.ResidueAt(t),
                                    static_cast<double>(params.shallow_buffer_bytes));
      const double ahead_ns = ahead * 8.0 / params.line_rate_bps * 1e9;
      ASSERT_LE(ahead_ns, bound_ns);
    }
  }
}

}  // namespace
}  // namespace hpwan
