#include "hpwan/tm/shaper.h"

#include <algorithm>

namespace hpwan {

Shaper::Shaper(uint64_t rate_bps, uint64_t backlog_cap_bytes)
    : clock_(rate_bps, SerializationClock::Rounding::kUp),
      backlog_cap_bytes_(backlog_cap_bytes) {}

void Shaper::Purge(SimTime now) {
  while (!pending_.empty() && pending_.front().release <= now) {
    pending_bytes_ -= pending_.front().bytes;
    pending_.pop_front();
  }
}

uint64_t Shaper::backlog_bytes(SimTime now) {
  Purge(now);
  return pending_bytes_;
}

std::optional<SimTime> Shaper::Shape(uint32_t wire_bytes, SimTime now) {
  Purge(now);
  if (pending_bytes_ + wire_bytes > backlog_cap_bytes_) {
    ++drops_;
    return std::nullopt;
  }
  const SimTime release = std::max(now, next_release_);
  next_release_ = release + clock_.Next(wire_bytes);
  if (release > now) {
    pending_.push_back(Pending{release, wire_bytes});
    pending_bytes_ += wire_bytes;
  }
  return release;
}

}  // namespace hpwan
