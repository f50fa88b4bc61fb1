#ifndef HPWAN_NET_QUEUE_H_
#define HPWAN_NET_QUEUE_H_

#include <cstdint>
#include <deque>
#include <optional>

#include "hpwan/net/packet.h"

namespace hpwan {

enum class EnqueueResult { kAccepted, kAcceptedWithCe, kDropped };

// Byte-counted drop-tail FIFO with a single ECN marking threshold.
class Queue {
 public:
  static constexpr uint64_t kUnlimited = UINT64_MAX;

  Queue(uint64_t capacity_bytes = kUnlimited,
        uint64_t ecn_threshold_bytes = kUnlimited)
      : capacity_bytes_(capacity_bytes),
        ecn_threshold_bytes_(ecn_threshold_bytes) {}

  // Tail drop when the packet would push occupancy past capacity. ECT packets
  // admitted above the marking threshold leave with CE set.
  EnqueueResult Enqueue(PacketHandle handle, Packet& packet);
  // Admission decision only; no state change.
  EnqueueResult Probe(const Packet& packet) const;

  std::optional<PacketHandle> Front() const;
  uint32_t FrontBytes() const { return items_.front().bytes; }
  std::optional<PacketHandle> Dequeue();

  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }
  uint64_t occupancy_bytes() const { return occupancy_bytes_; }
  uint64_t capacity_bytes() const { return capacity_bytes_; }
  uint64_t ecn_threshold_bytes() const { return ecn_threshold_bytes_; }
  uint64_t drops() const { return drops_; }
  uint64_t ce_marks() const { return ce_marks_; }

 private:
  struct Item {
    PacketHandle handle;
    uint32_t bytes;
  };
  uint64_t capacity_bytes_;
  uint64_t ecn_threshold_bytes_;
  uint64_t occupancy_bytes_ = 0;
  uint64_t drops_ = 0;
  uint64_t ce_marks_ = 0;
  std::deque<Item> items_;
};

}  // namespace hpwan

#endif  // HPWAN_NET_QUEUE_H_
