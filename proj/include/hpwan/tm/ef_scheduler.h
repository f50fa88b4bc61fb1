#ifndef HPWAN_TM_EF_SCHEDULER_H_
#define HPWAN_TM_EF_SCHEDULER_H_

#include <cstdint>
#include <optional>

#include "hpwan/net/queue.h"
#include "hpwan/tm/token_bucket.h"

namespace hpwan {

enum class TrafficClass { kExpedited, kBestEffort };

// Two-class strict-priority scheduler. The expedited class is rate-limited by
// a token bucket (fraction of the link rate); best effort is work-conserving
// and only served when no conforming expedited packet is waiting.
class EfScheduler {
 public:
  // ef_rate_bps == 0 leaves the expedited class unshaped.
  EfScheduler(Queue ef_queue, Queue best_effort_queue, uint64_t ef_rate_bps,
              uint64_t ef_burst_bytes);

  EnqueueResult Enqueue(PacketHandle handle, Packet& packet, TrafficClass cls);
  std::optional<PacketHandle> Dequeue(SimTime now);

  // Earliest time the expedited head becomes eligible; kInfiniteTime if the
  // expedited queue is empty.
  SimTime NextEligible(SimTime now) const;

  bool empty() const { return ef_.empty() && be_.empty(); }
  const Queue& ef_queue() const { return ef_; }
  const Queue& best_effort_queue() const { return be_; }
  uint64_t occupancy_bytes() const {
    return ef_.occupancy_bytes() + be_.occupancy_bytes();
  }
  bool shaped() const { return ef_bucket_.has_value(); }

 private:
  Queue ef_;
  Queue be_;
  std::optional<TokenBucket> ef_bucket_;
};

}  // namespace hpwan

#endif  // HPWAN_TM_EF_SCHEDULER_H_
