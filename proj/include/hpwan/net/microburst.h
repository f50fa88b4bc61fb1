#ifndef HPWAN_NET_MICROBURST_H_
#define HPWAN_NET_MICROBURST_H_

#include <cstdint>

#include "hpwan/sim/rng.h"
#include "hpwan/sim/time.h"

namespace hpwan {

enum class MicroburstVerdict { kPass, kDropped };

enum class MicroburstLocation { kReceiverAccess, kSenderAccess };

struct MicroburstParams {
  bool enabled = true;
  MicroburstLocation location = MicroburstLocation::kReceiverAccess;
  uint64_t shallow_buffer_bytes = 150'000;
  double burst_rate_per_s = 2.0;        // Poisson arrivals
  double mean_burst_bytes = 120'000.0;  // exponential sizes
  // Rate at which cross-traffic residue leaves the shallow buffer.
  uint64_t line_rate_bps = 25'000'000'000ULL;
};

// Cross-traffic bursts landing in a shallow switch buffer on the VC's path.
// A burst's bytes are pending from its arrival instant and drain at line
// rate; the buffer holds at most shallow_buffer_bytes of them. A VC packet is
// dropped when the pending residue plus the VC's own backlog leaves no room
// for it. Queueing behind cross traffic is bounded by shallow_buffer_bytes /
// line rate, so these drops carry no delay signal.
class MicroburstLossModel {
 public:
  MicroburstLossModel(const MicroburstParams& params, RngStream* rng);

  MicroburstVerdict Step(uint32_t wire_bytes, SimTime now,
                         uint64_t vc_backlog_bytes);

  // Cross-traffic bytes resident at `now` (advances the burst process).
  double ResidueAt(SimTime now);

  const MicroburstParams& params() const { return params_; }
  uint64_t drops() const { return drops_; }
  uint64_t bursts() const { return bursts_; }

 private:
  void Advance(SimTime now);
  double NextGapNs();

  MicroburstParams params_;
  RngStream* rng_;
  double drain_bytes_per_ns_;
  double residue_bytes_ = 0.0;
  SimTime residue_time_ = 0;
  SimTime next_burst_ = kInfiniteTime;
  uint64_t drops_ = 0;
  uint64_t bursts_ = 0;
};

}  // namespace hpwan

#endif  // HPWAN_NET_MICROBURST_H_
