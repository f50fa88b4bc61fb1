#include "hpwan/net/queue.h"

namespace hpwan {

EnqueueResult Queue::Probe(const Packet& packet) const {
  const uint64_t after = occupancy_bytes_ + packet.wire_bytes;
  if (after > capacity_bytes_) return EnqueueResult::kDropped;
  if (after > ecn_threshold_bytes_ && packet.ecn != Ecn::kNotEct) {
    return EnqueueResult::kAcceptedWithCe;
  }
  return EnqueueResult::kAccepted;
}

EnqueueResult Queue::Enqueue(PacketHandle handle, Packet& packet) {
  const EnqueueResult result = Probe(packet);
  if (result == EnqueueResult::kDropped) {
    ++drops_;
    return result;
  }
  if (result == EnqueueResult::kAcceptedWithCe) {
    if (packet.ecn != Ecn::kCe) ++ce_marks_;
    packet.ecn = Ecn::kCe;
  }
  occupancy_bytes_ += packet.wire_bytes;
  items_.push_back(Item{handle, packet.wire_bytes});
  return result;
}

std::optional<PacketHandle> Queue::Front() const {
  if (items_.empty()) return std::nullopt;
  return items_.front().handle;
}

std::optional<PacketHandle> Queue::Dequeue() {
  if (items_.empty()) return std::nullopt;
  const Item item = items_.front();
  items_.pop_front();
  occupancy_bytes_ -= item.bytes;
  return item.handle;
}

}  // namespace hpwan
