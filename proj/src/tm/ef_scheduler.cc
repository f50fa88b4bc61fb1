#include "hpwan/tm/ef_scheduler.h"

#include <utility>

namespace hpwan {

EfScheduler::EfScheduler(Queue ef_queue, Queue best_effort_queue,
                         uint64_t ef_rate_bps, uint64_t ef_burst_bytes)
    : ef_(std::move(ef_queue)), be_(std::move(best_effort_queue)) {
  if (ef_rate_bps > 0) ef_bucket_.emplace(ef_rate_bps, ef_burst_bytes);
}

EnqueueResult EfScheduler::Enqueue(PacketHandle handle, Packet& packet,
                                   TrafficClass cls) {
  return cls == TrafficClass::kExpedited ? ef_.Enqueue(handle, packet)
                                         : be_.Enqueue(handle, packet);
}

std::optional<PacketHandle> EfScheduler::Dequeue(SimTime now) {
  if (!ef_.empty()) {
    if (!ef_bucket_ || ef_bucket_->TryConsume(ef_.FrontBytes(), now)) {
      return ef_.Dequeue();
    }
  }
  return be_.Dequeue();
}

SimTime EfScheduler::NextEligible(SimTime now) const {
  if (ef_.empty()) return kInfiniteTime;
  if (!ef_bucket_) return now;
  return ef_bucket_->AvailableAt(ef_.FrontBytes(), now);
}

}  // namespace hpwan
