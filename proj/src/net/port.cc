#include "hpwan/net/port.h"

#include <utility>

namespace hpwan {

Port::Port(Link link, EfScheduler scheduler, PacketPool* pool,
           PortListener* listener)
    : link_(link),
      scheduler_(std::move(scheduler)),
      pool_(pool),
      listener_(listener) {}

EnqueueResult Port::Arrive(PacketHandle handle, SimTime now, TrafficClass cls) {
  const EnqueueResult result =
      scheduler_.Enqueue(handle, (*pool_)[handle], cls);
  if (result != EnqueueResult::kDropped) Service(now);
  return result;
}

void Port::OnWake(SimTime now) {
  if (wake_pending_ && now >= wake_at_) wake_pending_ = false;
  Service(now);
}

void Port::Wake(SimTime at) {
  if (wake_pending_ && wake_at_ <= at) return;
  wake_pending_ = true;
  wake_at_ = at;
  listener_->RequestWake(at);
}

void Port::Service(SimTime now) {
  while (true) {
    if (!link_.IdleAt(now)) {
      if (!scheduler_.empty()) Wake(link_.busy_until());
      return;
    }
    const auto handle = scheduler_.Dequeue(now);
    if (!handle) {
      const SimTime t = scheduler_.NextEligible(now);
      if (t != kInfiniteTime) Wake(t);
      return;
    }
    const SimTime arrival = link_.Transmit((*pool_)[*handle].wire_bytes, now);
    listener_->OnDeparture(*handle, arrival);
  }
}

}  // namespace hpwan
