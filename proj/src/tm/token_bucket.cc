#include "hpwan/tm/token_bucket.h"

#include <stdexcept>

namespace hpwan {

TokenBucket::TokenBucket(uint64_t rate_bps, uint64_t burst_bytes, SimTime start)
    : rate_bps_(rate_bps),
      capacity_(burst_bytes * kUnitsPerByte),
      tokens_(capacity_),
      last_update_(start) {
  if (rate_bps == 0) throw std::invalid_argument("token bucket rate must be > 0");
  if (burst_bytes > UINT64_MAX / kUnitsPerByte) {
    throw std::invalid_argument("token bucket burst too large");
  }
}

void TokenBucket::Refill(SimTime now) {
  if (now <= last_update_) return;
  const uint64_t dt = static_cast<uint64_t>(now - last_update_);
  last_update_ = now;
  const uint64_t room = capacity_ - tokens_;
  // dt * rate >= room without overflowing the product.
  if (dt >= room / rate_bps_ + 1) {
    tokens_ = capacity_;
  } else {
    tokens_ += dt * rate_bps_;
    if (tokens_ > capacity_) tokens_ = capacity_;
  }
}

bool TokenBucket::TryConsume(uint64_t bytes, SimTime now) {
  Refill(now);
  const unsigned __int128 need =
      static_cast<unsigned __int128>(bytes) * kUnitsPerByte;
  if (need > tokens_) return false;
  tokens_ -= static_cast<uint64_t>(need);
  return true;
}

SimTime TokenBucket::AvailableAt(uint64_t bytes, SimTime now) const {
  const unsigned __int128 need =
      static_cast<unsigned __int128>(bytes) * kUnitsPerByte;
  if (need > capacity_) return kInfiniteTime;
  SimTime t = now > last_update_ ? now : last_update_;
  unsigned __int128 have = tokens_;
  if (t > last_update_) {
    have += static_cast<unsigned __int128>(t - last_update_) * rate_bps_;
    if (have > capacity_) have = capacity_;
  }
  if (have >= need) return t;
  const unsigned __int128 deficit = need - have;
  return t + static_cast<SimTime>((deficit + rate_bps_ - 1) / rate_bps_);
}

}  // namespace hpwan
