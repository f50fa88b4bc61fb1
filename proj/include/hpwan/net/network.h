#ifndef HPWAN_NET_NETWORK_H_
#define HPWAN_NET_NETWORK_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hpwan/net/forwarder.h"
#include "hpwan/net/microburst.h"
#include "hpwan/net/packet.h"
#include "hpwan/net/port.h"
#include "hpwan/sim/simulator.h"
#include "hpwan/tm/policer.h"
#include "hpwan/tm/shaper.h"

namespace hpwan {

struct DropCounters {
  uint64_t policer = 0;
  uint64_t queue = 0;
  uint64_t microburst = 0;
  uint64_t forwarder = 0;
  uint64_t shaper = 0;

  uint64_t total() const {
    return policer + queue + microburst + forwarder + shaper;
  }
};

struct VcCounters {
  uint64_t sent = 0;       // data packets injected by senders
  uint64_t delivered = 0;  // data packets handed to receivers
  DropCounters drops;
  uint64_t ce_marks = 0;
  // Payload of retransmitted packets as seen entering the network.
  uint64_t retx_payload_bytes = 0;
};

class PacketSink {
 public:
  virtual ~PacketSink() = default;
  // Ownership of the handle passes to the sink.
  virtual void OnPacketDelivered(PacketHandle handle, SimTime now) = 0;
};

struct NodeConfig {
  std::string name;
  std::optional<ForwarderParams> forwarder;
  uint64_t port_rate_bps = 100'000'000'000ULL;
  SimTime port_prop_delay = 0;
  uint64_t queue_capacity_bytes = Queue::kUnlimited;
  uint64_t ecn_threshold_bytes = Queue::kUnlimited;
  // Expedited-class shaping as a fraction of the port rate; 0 disables it.
  double ef_fraction = 0.0;
  uint64_t ef_burst_bytes = 0;
};

struct Hop {
  uint32_t node = 0;
  // Fixed latency (e.g. long-haul propagation) before reaching the node.
  SimTime delay_before = 0;
};

using NodeId = uint32_t;

// Store-and-forward data plane for the VC data path. Each node is a
// forwarding stage, optional per-VC conditioners (policer, shaper, shallow
// buffer cross traffic) and one egress port. Data packets follow their VC's
// hop list and are handed to the VC's sink after the last hop.
class Network : public EventTarget {
 public:
  Network(Simulator* sim, PacketPool* pool, uint32_t num_vcs);
  ~Network() override;

  NodeId AddNode(const NodeConfig& config);
  void AttachPolicer(NodeId node, uint32_t vc, const LeakyBucketProfile& profile);
  void AttachShaper(NodeId node, uint32_t vc, uint64_t rate_bps,
                    uint64_t backlog_cap_bytes);
  void AttachMicroburst(NodeId node, uint32_t vc, const MicroburstParams& params);
  void SetPath(uint32_t vc, std::vector<Hop> hops, PacketSink* sink);

  // A sender hands a data packet to the first hop of its VC at `now`.
  void Inject(PacketHandle handle, SimTime now);

  void OnEvent(const Event& event) override;

  const VcCounters& counters(uint32_t vc) const { return counters_[vc]; }
  uint32_t num_vcs() const { return static_cast<uint32_t>(counters_.size()); }
  size_t num_nodes() const { return nodes_.size(); }
  const std::string& node_name(NodeId id) const;
  const Port& port(NodeId id) const;
  // Packets currently owned by the network.
  uint64_t in_flight() const { return in_flight_; }
  // Fixed latency a packet sees from Inject to delivery with empty queues.
  SimTime BaseOneWayDelay(uint32_t vc, uint32_t wire_bytes) const;

 private:
  class Node;
  enum EventKind : uint32_t { kArrive, kForwarded, kShaped, kPortWake, kDeliver };

  void HandleArrival(PacketHandle handle, SimTime now);
  void AfterForwarder(Node& node, PacketHandle handle, SimTime now);
  void ToPort(Node& node, PacketHandle handle, SimTime now);
  void OnDeparture(Node& node, PacketHandle handle, SimTime arrival);
  void Drop(PacketHandle handle, uint64_t DropCounters::*cause);
  Node& NodeAt(PacketHandle handle);

  Simulator* sim_;
  PacketPool* pool_;
  uint32_t target_id_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<std::vector<Hop>> paths_;
  std::vector<PacketSink*> sinks_;
  std::vector<VcCounters> counters_;
  uint64_t in_flight_ = 0;
};

}  // namespace hpwan

#endif  // HPWAN_NET_NETWORK_H_
