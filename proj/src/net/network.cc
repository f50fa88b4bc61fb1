#include "hpwan/net/network.h"

#include <stdexcept>
#include <utility>

namespace hpwan {

class Network::Node : public PortListener {
 public:
  Node(Network* net, NodeId id, const NodeConfig& config)
      : net_(net),
        id_(id),
        name_(config.name),
        port_(Link(config.port_rate_bps, config.port_prop_delay),
              EfScheduler(Queue(config.queue_capacity_bytes,
                                config.ecn_threshold_bytes),
                          Queue(config.queue_capacity_bytes,
                                config.ecn_threshold_bytes),
                          config.ef_fraction > 0
                              ? static_cast<uint64_t>(config.ef_fraction *
                                                      config.port_rate_bps)
                              : 0,
                          config.ef_burst_bytes),
              net->pool_, this) {
    if (config.forwarder) {
      forwarder_.emplace(*config.forwarder);
      forwarder_rng_ = &net->sim_->Rng("forwarder." + name_);
    }
    const uint32_t n = net->num_vcs();
    policers_.resize(n);
    shapers_.resize(n);
    microbursts_.resize(n);
  }

  void OnDeparture(PacketHandle handle, SimTime arrival) override {
    net_->OnDeparture(*this, handle, arrival);
  }
  void RequestWake(SimTime at) override {
    net_->sim_->Schedule(at, net_->target_id_, kPortWake, id_);
  }

  // Latency folded into upstream delivery when the forwarder is a pure delay.
  SimTime ingress_delay() const {
    return forwarder_ && forwarder_->IsPureDelay() ? forwarder_->pure_delay()
                                                   : 0;
  }

  Network* net_;
  NodeId id_;
  std::string name_;
  Port port_;
  std::optional<Forwarder> forwarder_;
  RngStream* forwarder_rng_ = nullptr;
  std::vector<std::unique_ptr<Policer>> policers_;
  std::vector<std::unique_ptr<Shaper>> shapers_;
  std::vector<std::unique_ptr<MicroburstLossModel>> microbursts_;
};

Network::Network(Simulator* sim, PacketPool* pool, uint32_t num_vcs)
    : sim_(sim),
      pool_(pool),
      paths_(num_vcs),
      sinks_(num_vcs, nullptr),
      counters_(num_vcs) {
  target_id_ = sim_->Register(this);
}

Network::~Network() = default;

NodeId Network::AddNode(const NodeConfig& config) {
  const NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::make_unique<Node>(this, id, config));
  return id;
}

void Network::AttachPolicer(NodeId node, uint32_t vc,
                            const LeakyBucketProfile& profile) {
  nodes_.at(node)->policers_.at(vc) = std::make_unique<Policer>(profile);
}

void Network::AttachShaper(NodeId node, uint32_t vc, uint64_t rate_bps,
                           uint64_t backlog_cap_bytes) {
  nodes_.at(node)->shapers_.at(vc) =
      std::make_unique<Shaper>(rate_bps, backlog_cap_bytes);
}

void Network::AttachMicroburst(NodeId node, uint32_t vc,
                               const MicroburstParams& params) {
  RngStream& rng = sim_->Rng("microburst." + nodes_.at(node)->name_ + ".vc" +
                             std::to_string(vc));
  nodes_.at(node)->microbursts_.at(vc) =
      std::make_unique<MicroburstLossModel>(params, &rng);
}

void Network::SetPath(uint32_t vc, std::vector<Hop> hops, PacketSink* sink) {
  if (hops.empty()) throw std::invalid_argument("empty VC path");
  for (const Hop& h : hops) {
    if (h.node >= nodes_.size()) throw std::invalid_argument("unknown node");
  }
  paths_.at(vc) = std::move(hops);
  sinks_.at(vc) = sink;
}

const std::string& Network::node_name(NodeId id) const {
  return nodes_.at(id)->name_;
}

const Port& Network::port(NodeId id) const { return nodes_.at(id)->port_; }

SimTime Network::BaseOneWayDelay(uint32_t vc, uint32_t wire_bytes) const {
  SimTime total = 0;
  for (const Hop& hop : paths_.at(vc)) {
    const Node& node = *nodes_[hop.node];
    total += hop.delay_before + node.ingress_delay();
    total += SerializationNs(wire_bytes, node.port_.link().rate_bps()) +
             node.port_.link().prop_delay();
  }
  return total;
}

Network::Node& Network::NodeAt(PacketHandle handle) {
  const Packet& p = (*pool_)[handle];
  return *nodes_[paths_[p.vc_id][p.hop].node];
}

void Network::Inject(PacketHandle handle, SimTime now) {
  Packet& p = (*pool_)[handle];
  p.hop = 0;
  ++counters_[p.vc_id].sent;
  if (p.is_retx) counters_[p.vc_id].retx_payload_bytes += p.payload_bytes;
  ++in_flight_;
  HandleArrival(handle, now);
}

void Network::Drop(PacketHandle handle, uint64_t DropCounters::*cause) {
  ++(counters_[(*pool_)[handle].vc_id].drops.*cause);
  --in_flight_;
  pool_->Release(handle);
}

void Network::HandleArrival(PacketHandle handle, SimTime now) {
  Node& node = NodeAt(handle);
  if (node.forwarder_ && !node.forwarder_->IsPureDelay()) {
    const auto out = node.forwarder_->Admit(now, *node.forwarder_rng_);
    if (!out) {
      Drop(handle, &DropCounters::forwarder);
      return;
    }
    if (*out > now) {
      sim_->Schedule(*out, target_id_, kForwarded, handle);
      return;
    }
  }
  AfterForwarder(node, handle, now);
}

void Network::AfterForwarder(Node& node, PacketHandle handle, SimTime now) {
  const Packet& p = (*pool_)[handle];
  if (Policer* policer = node.policers_[p.vc_id].get()) {
    if (policer->Police(p.wire_bytes, now) == PoliceVerdict::kDrop) {
      Drop(handle, &DropCounters::policer);
      return;
    }
  }
  if (Shaper* shaper = node.shapers_[p.vc_id].get()) {
    const auto release = shaper->Shape(p.wire_bytes, now);
    if (!release) {
      Drop(handle, &DropCounters::shaper);
      return;
    }
    if (*release > now) {
      sim_->Schedule(*release, target_id_, kShaped, handle);
      return;
    }
  }
  ToPort(node, handle, now);
}

void Network::ToPort(Node& node, PacketHandle handle, SimTime now) {
  Packet& p = (*pool_)[handle];
  if (MicroburstLossModel* mb = node.microbursts_[p.vc_id].get()) {
    if (mb->Step(p.wire_bytes, now, node.port_.backlog_bytes()) ==
        MicroburstVerdict::kDropped) {
      Drop(handle, &DropCounters::microburst);
      return;
    }
  }
  const bool was_ce = p.ecn == Ecn::kCe;
  const uint32_t vc = p.vc_id;
  const EnqueueResult r = node.port_.Arrive(handle, now);
  if (r == EnqueueResult::kDropped) {
    Drop(handle, &DropCounters::queue);
  } else if (r == EnqueueResult::kAcceptedWithCe && !was_ce) {
    ++counters_[vc].ce_marks;
  }
}

void Network::OnDeparture(Node& node, PacketHandle handle, SimTime arrival) {
  (void)node;
  Packet& p = (*pool_)[handle];
  const auto& path = paths_[p.vc_id];
  const size_t next = static_cast<size_t>(p.hop) + 1;
  if (next == path.size()) {
    sim_->Schedule(arrival, target_id_, kDeliver, handle);
    return;
  }
  p.hop = static_cast<uint16_t>(next);
  const SimTime at = arrival + path[next].delay_before +
                     nodes_[path[next].node]->ingress_delay();
  sim_->Schedule(at, target_id_, kArrive, handle);
}

void Network::OnEvent(const Event& event) {
  const SimTime now = event.time;
  switch (event.kind) {
    case kArrive:
      HandleArrival(static_cast<PacketHandle>(event.arg), now);
      break;
    case kForwarded: {
      const auto h = static_cast<PacketHandle>(event.arg);
      AfterForwarder(NodeAt(h), h, now);
      break;
    }
    case kShaped: {
      const auto h = static_cast<PacketHandle>(event.arg);
      ToPort(NodeAt(h), h, now);
      break;
    }
    case kPortWake:
      nodes_[event.arg]->port_.OnWake(now);
      break;
    case kDeliver: {
      const auto h = static_cast<PacketHandle>(event.arg);
      const uint32_t vc = (*pool_)[h].vc_id;
      ++counters_[vc].delivered;
      --in_flight_;
      sinks_[vc]->OnPacketDelivered(h, now);
      break;
    }
    default:
      throw std::logic_error("unknown network event kind");
  }
}

}  // namespace hpwan
