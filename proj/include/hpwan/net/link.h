#ifndef HPWAN_NET_LINK_H_
#define HPWAN_NET_LINK_H_

#include <cstdint>

#include "hpwan/sim/time.h"

namespace hpwan {

// Converts byte counts to nanoseconds at a fixed rate. Each call rounds to
// whole nanoseconds and carries the error, so cumulative time never drifts
// from total_bits / rate. Rounding up keeps a paced sequence from ever
// running ahead of its rate; rounding down never lags it.
class SerializationClock {
 public:
  enum class Rounding { kDown, kUp };

  explicit SerializationClock(uint64_t rate_bps,
                              Rounding rounding = Rounding::kDown)
      : rate_bps_(rate_bps), round_up_(rounding == Rounding::kUp) {}

  SimTime Next(uint64_t bytes) {
    const unsigned __int128 bits_ns =
        static_cast<unsigned __int128>(bytes) * 8 * kNsPerSec;
    if (!round_up_) {
      const unsigned __int128 scaled = bits_ns + carry_;
      carry_ = static_cast<uint64_t>(scaled % rate_bps_);
      return static_cast<SimTime>(scaled / rate_bps_);
    }
    // carry_ holds time already emitted beyond the exact total.
    if (bits_ns <= carry_) {
      carry_ -= static_cast<uint64_t>(bits_ns);
      return 0;
    }
    const unsigned __int128 need = bits_ns - carry_;
    const unsigned __int128 ns = (need + rate_bps_ - 1) / rate_bps_;
    carry_ = static_cast<uint64_t>(ns * rate_bps_ - need);
    return static_cast<SimTime>(ns);
  }
  uint64_t rate_bps() const { return rate_bps_; }

 private:
  uint64_t rate_bps_;
  bool round_up_;
  uint64_t carry_ = 0;  // in bit-ns units, always < rate_bps_
};

// Serialization time of one packet on an idle link, rounded down.
inline SimTime SerializationNs(uint64_t bytes, uint64_t rate_bps) {
  return static_cast<SimTime>(static_cast<unsigned __int128>(bytes) * 8 *
                              kNsPerSec / rate_bps);
}

// Point-to-point FIFO link: packets serialize back to back, then propagate.
class Link {
 public:
  Link(uint64_t rate_bps, SimTime prop_delay)
      : clock_(rate_bps), prop_delay_(prop_delay) {}

  // Starts serializing at max(now, busy_until) and returns the arrival time
  // of the last bit at the far end.
  SimTime Transmit(uint32_t wire_bytes, SimTime now) {
    const SimTime start = now > busy_until_ ? now : busy_until_;
    busy_until_ = start + clock_.Next(wire_bytes);
    return busy_until_ + prop_delay_;
  }

  bool IdleAt(SimTime now) const { return now >= busy_until_; }
  SimTime busy_until() const { return busy_until_; }
  uint64_t rate_bps() const { return clock_.rate_bps(); }
  SimTime prop_delay() const { return prop_delay_; }

 private:
  SerializationClock clock_;
  SimTime prop_delay_;
  SimTime busy_until_ = 0;
};

}  // namespace hpwan

#endif  // HPWAN_NET_LINK_H_
