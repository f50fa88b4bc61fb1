#ifndef HPWAN_NET_FORWARDER_H_
#define HPWAN_NET_FORWARDER_H_

#include <cstdint>
#include <deque>
#include <optional>

#include "hpwan/sim/rng.h"
#include "hpwan/sim/time.h"

namespace hpwan {

enum class ForwarderKind { kLinux, kDpdk };

struct ForwarderParams {
  ForwarderKind kind = ForwarderKind::kDpdk;
  // Linux kernel path: lognormal per-packet latency, capped.
  double median_delay_us = 20.0;
  double sigma = 1.0;
  double max_delay_us = 5000.0;
  // DPDK poll-mode path: constant latency.
  double constant_delay_us = 2.0;
  // Packets per second the forwarding core can sustain; 0 means unbounded.
  double pps_capacity = 0.0;
  // Input ring size; packets beyond it are dropped.
  uint32_t ring_slots = 8192;

  static ForwarderParams LinuxDefaults();
  static ForwarderParams DpdkDefaults();
};

// One latency draw for a packet crossing the forwarder.
SimTime ForwarderDelay(const ForwarderParams& params, RngStream& rng);

// Forwarding stage of a router VM shared by every VC it carries. Output order
// equals input order: a packet leaves no earlier than its own latency draw,
// no earlier than its predecessor plus the per-packet service time.
class Forwarder {
 public:
  explicit Forwarder(const ForwarderParams& params);

  // Output time, or nullopt when the input ring is full.
  std::optional<SimTime> Admit(SimTime now, RngStream& rng);

  // A DPDK forwarder with no pps limit behaves as a fixed delay and can be
  // folded into the upstream link.
  bool IsPureDelay() const;
  SimTime pure_delay() const;

  const ForwarderParams& params() const { return params_; }
  uint64_t drops() const { return drops_; }
  size_t backlog() const { return in_system_.size(); }

 private:
  ForwarderParams params_;
  SimTime service_ns_ = 0;
  SimTime last_out_ = 0;
  std::deque<SimTime> in_system_;  // output times of packets not yet out
  uint64_t drops_ = 0;
};

}  // namespace hpwan

#endif  // HPWAN_NET_FORWARDER_H_
