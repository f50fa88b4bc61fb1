#ifndef HPWAN_TRANSPORT_RATE_SAMPLE_H_
#define HPWAN_TRANSPORT_RATE_SAMPLE_H_

#include <cstdint>

#include "hpwan/sim/time.h"

namespace hpwan {

// What one ACK tells the congestion controller. Delivery-rate fields follow
// the usual per-transmission snapshot scheme: each segment remembers how much
// had been delivered when it was sent, and the ACK for it measures the
// progress since then.
struct RateSample {
  // Bytes newly delivered (SACKed) by this ACK.
  uint64_t acked_bytes = 0;
  // Delivered bytes between the acked segment's send snapshot and now.
  uint64_t delivered_delta_bytes = 0;
  // Measurement interval; 0 when the sample is not usable for bandwidth
  // (e.g. shorter than the path's minimum RTT).
  SimTime interval = 0;
  SimTime rtt = 0;
  bool is_app_limited = false;
  uint64_t newly_lost_bytes = 0;
  bool ce_marked = false;

  // Flow totals at the time of the ACK.
  uint64_t delivered = 0;
  // Flow delivered count when the acked segment was sent; starts a new round
  // once it passes the round's end marker.
  uint64_t prior_delivered = 0;
  uint64_t prior_inflight = 0;  // before this ACK was processed
  uint64_t inflight = 0;        // after this ACK and any losses it revealed
  // Bytes in flight when the acked segment was sent, and bytes marked lost
  // since then.
  uint64_t tx_in_flight = 0;
  uint64_t lost = 0;
  SimTime srtt = 0;

  bool has_bandwidth() const { return interval > 0; }
  double delivery_rate_bps() const {
    return interval > 0 ? delivered_delta_bytes * 8.0 * kNsPerSec / interval
                        : 0.0;
  }
};

}  // namespace hpwan

#endif  // HPWAN_TRANSPORT_RATE_SAMPLE_H_
