#ifndef HPWAN_NET_PORT_H_
#define HPWAN_NET_PORT_H_

#include "hpwan/net/link.h"
#include "hpwan/net/packet.h"
#include "hpwan/tm/ef_scheduler.h"

namespace hpwan {

class PortListener {
 public:
  virtual ~PortListener() = default;
  // The packet's last bit reaches the far end of the link at `arrival`.
  virtual void OnDeparture(PacketHandle handle, SimTime arrival) = 0;
  // The port needs Service() to be called again at `at`.
  virtual void RequestWake(SimTime at) = 0;
};

// Egress port: scheduler in front of a serializing link. Service runs only
// when something changes (arrival, link free, tokens available), so an idle
// port costs no events.
class Port {
 public:
  Port(Link link, EfScheduler scheduler, PacketPool* pool,
       PortListener* listener);

  EnqueueResult Arrive(PacketHandle handle, SimTime now,
                       TrafficClass cls = TrafficClass::kExpedited);
  void OnWake(SimTime now);

  uint64_t backlog_bytes() const { return scheduler_.occupancy_bytes(); }
  const EfScheduler& scheduler() const { return scheduler_; }
  const Link& link() const { return link_; }

 private:
  void Service(SimTime now);
  void Wake(SimTime at);

  Link link_;
  EfScheduler scheduler_;
  PacketPool* pool_;
  PortListener* listener_;
  bool wake_pending_ = false;
  SimTime wake_at_ = 0;
};

}  // namespace hpwan

#endif  // HPWAN_NET_PORT_H_
