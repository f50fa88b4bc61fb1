#ifndef HPWAN_TM_SHAPER_H_
#define HPWAN_TM_SHAPER_H_

#include <cstdint>
#include <deque>
#include <optional>

#include "hpwan/net/link.h"
#include "hpwan/sim/time.h"

namespace hpwan {

// Per-VC release scheduler. Packets leave in FIFO order, each no earlier than
// the previous release plus its own serialization time at the shaping rate,
// so output over any interval stays within rate * t + one packet.
class Shaper {
 public:
  Shaper(uint64_t rate_bps, uint64_t backlog_cap_bytes);

  // Release time for a packet arriving at `now`, or nullopt when the backlog
  // cap would be exceeded (counted as a shaper drop).
  std::optional<SimTime> Shape(uint32_t wire_bytes, SimTime now);

  uint64_t backlog_bytes(SimTime now);
  uint64_t rate_bps() const { return clock_.rate_bps(); }
  uint64_t drops() const { return drops_; }
  SimTime next_release() const { return next_release_; }

 private:
  void Purge(SimTime now);

  SerializationClock clock_;
  uint64_t backlog_cap_bytes_;
  SimTime next_release_ = 0;
  struct Pending {
    SimTime release;
    uint32_t bytes;
  };
  std::deque<Pending> pending_;
  uint64_t pending_bytes_ = 0;
  uint64_t drops_ = 0;
};

}  // namespace hpwan

#endif  // HPWAN_TM_SHAPER_H_
