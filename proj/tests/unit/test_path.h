#ifndef HPWAN_TESTS_UNIT_TEST_PATH_H_
#define HPWAN_TESTS_UNIT_TEST_PATH_H_

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "hpwan/net/network.h"
#include "hpwan/transport/transfer.h"

namespace hpwan {
namespace testing {

inline constexpr uint64_t k20G = 20'000'000'000ULL;
inline constexpr uint32_t kWire = kDefaultMss + kDefaultFramingBytes;

// Fixed window, optional fixed pacing rate.
class FixedWindow : public CongestionControl {
 public:
  FixedWindow(uint64_t cwnd, double pacing_bps)
      : cwnd_(cwnd), pacing_(pacing_bps) {}
  void OnAck(const RateSample&, SimTime) override { ++acks; }
  void OnLoss(uint64_t, SimTime, SimTime) override { ++losses; }
  void OnRto(SimTime) override { ++rtos; }
  uint64_t cwnd_bytes() const override { return cwnd_; }
  double pacing_rate_bps() const override { return pacing_; }
  CcKind kind() const override { return CcKind::kCubic; }

  int acks = 0;
  int losses = 0;
  int rtos = 0;

 private:
  uint64_t cwnd_;
  double pacing_;
};

inline Transfer::CcFactory FixedFactory(uint64_t cwnd,
                                 double pacing_bps =
                                     std::numeric_limits<double>::infinity()) {
  return [=](uint32_t, RngStream*) {
    return std::make_unique<FixedWindow>(cwnd, pacing_bps);
  };
}

// Sits between the network and the transfer and discards chosen packets.
class LossySink : public PacketSink {
 public:
  LossySink(PacketPool* pool, std::function<bool(const Packet&)> drop)
      : pool_(pool), drop_(std::move(drop)) {}
  void set_target(PacketSink* target) { target_ = target; }
  void OnPacketDelivered(PacketHandle handle, SimTime now) override {
    const Packet& p = (*pool_)[handle];
    arrivals.push_back(p);
    arrival_times.push_back(now);
    if (drop_(p)) {
      ++dropped;
      pool_->Release(handle);
      return;
    }
    target_->OnPacketDelivered(handle, now);
  }

  std::vector<Packet> arrivals;
  std::vector<SimTime> arrival_times;
  uint64_t dropped = 0;

 private:
  PacketPool* pool_;
  std::function<bool(const Packet&)> drop_;
  PacketSink* target_ = nullptr;
};

// A 100G sender NIC followed by a bottleneck (20G unless given) with one-way propagation
// `prop`; ACKs return after the same delay.
struct Path {
  Path(SimTime prop, uint64_t rate_bps = k20G, uint64_t seed = 1)
      : sim(seed), net(&sim, &pool, 1) {
    NodeConfig nic;
    nic.name = "nic";
    NodeConfig bottleneck;
    bottleneck.name = "bottleneck";
    bottleneck.port_rate_bps = rate_bps;
    bottleneck.port_prop_delay = prop;
    a = net.AddNode(nic);
    b = net.AddNode(bottleneck);
    config.ack_delay = prop;
  }

  std::unique_ptr<Transfer> Make(uint64_t bytes, uint32_t flows,
                                 const Transfer::CcFactory& factory,
                                 LossySink* lossy = nullptr) {
    auto t = std::make_unique<Transfer>(&sim, &net, &pool, 0, bytes, flows,
                                        factory, config);
    if (lossy != nullptr) {
      lossy->set_target(t.get());
      net.SetPath(0, {{a, 0}, {b, 0}}, lossy);
    } else {
      net.SetPath(0, {{a, 0}, {b, 0}}, t.get());
    }
    return t;
  }

  Simulator sim;
  PacketPool pool;
  Network net;
  NodeId a = 0;
  NodeId b = 0;
  TransportConfig config;
};

}  // namespace testing
}  // namespace hpwan

#endif  // HPWAN_TESTS_UNIT_TEST_PATH_H_
