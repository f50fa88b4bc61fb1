#ifndef HPWAN_TM_TOKEN_BUCKET_H_
#define HPWAN_TM_TOKEN_BUCKET_H_

#include <cstdint>

#include "hpwan/sim/time.h"

namespace hpwan {

// Token bucket in exact integer arithmetic. One byte of credit is stored as
// 8e9 units so that refill over dt nanoseconds at rate_bps is rate_bps * dt
// units with no rounding.
class TokenBucket {
 public:
  static constexpr uint64_t kUnitsPerByte = 8ULL * kNsPerSec;

  // Starts full at time `start`.
  TokenBucket(uint64_t rate_bps, uint64_t burst_bytes, SimTime start = 0);

  void Refill(SimTime now);
  // Consumes `bytes` if available after refilling to `now`.
  bool TryConsume(uint64_t bytes, SimTime now);
  // Earliest time >= now at which `bytes` can be consumed; kInfiniteTime if
  // `bytes` exceeds the burst.
  SimTime AvailableAt(uint64_t bytes, SimTime now) const;

  double tokens_bytes() const {
    return static_cast<double>(tokens_) / kUnitsPerByte;
  }
  uint64_t rate_bps() const { return rate_bps_; }
  uint64_t burst_bytes() const { return capacity_ / kUnitsPerByte; }
  SimTime last_update() const { return last_update_; }

 private:
  uint64_t rate_bps_;
  uint64_t capacity_;
  uint64_t tokens_;
  SimTime last_update_;
};

}  // namespace hpwan

#endif  // HPWAN_TM_TOKEN_BUCKET_H_
