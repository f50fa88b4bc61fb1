#ifndef HPWAN_CC_CONGESTION_CONTROL_H_
#define HPWAN_CC_CONGESTION_CONTROL_H_

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "hpwan/sim/rng.h"
#include "hpwan/sim/time.h"
#include "hpwan/transport/rate_sample.h"

namespace hpwan {

enum class CcKind { kCubic, kBbr1, kBbr3 };

std::string_view CcName(CcKind kind);
// Accepts "cubic", "bbr1", "bbr3"; throws std::invalid_argument otherwise.
CcKind ParseCcKind(std::string_view name);

// Per-flow congestion controller. The transport calls the hooks; the
// controller answers with a window and a pacing rate.
class CongestionControl {
 public:
  virtual ~CongestionControl() = default;

  virtual void OnAck(const RateSample& rs, SimTime now) = 0;
  // A segment of `lost_bytes`, originally sent at `sent_at`, was declared
  // lost by the SACK rule.
  virtual void OnLoss(uint64_t lost_bytes, SimTime sent_at, SimTime now) = 0;
  // The acked segment, sent at `sent_at`, carried a CE mark.
  virtual void OnCe(SimTime sent_at, SimTime now) {
    (void)sent_at;
    (void)now;
  }
  // Retransmission timeout: every outstanding segment was declared lost.
  virtual void OnRto(SimTime now) = 0;

  virtual uint64_t cwnd_bytes() const = 0;
  // Bits per second; +infinity means unpaced.
  virtual double pacing_rate_bps() const = 0;
  virtual CcKind kind() const = 0;
  // True while the controller deliberately runs a tiny window (BBR ProbeRTT).
  // Rate samples taken meanwhile are then treated as app-limited so they do
  // not age the bandwidth estimate out.
  virtual bool suppresses_rate_samples() const { return false; }
};

struct CubicParams {
  double c = 0.4;
  double beta = 0.7;
  bool tcp_friendly = true;
  bool ecn = true;  // treat CE as loss
};

struct Bbr1Params {
  double high_gain = 2.885;  // 2 / ln 2
  double cwnd_gain = 2.0;
  int bw_window_rounds = 10;
  SimTime min_rtt_window = Seconds(10);
  SimTime probe_rtt_duration = Milliseconds(200);
  double pacing_margin = 0.01;
};

struct Bbr3Params {
  double startup_gain = 2.77;
  double cwnd_gain = 2.0;
  double loss_threshold = 0.02;
  double beta = 0.3;
  double headroom = 0.85;
  SimTime probe_rtt_interval = Seconds(5);
  double probe_rtt_cwnd_gain = 0.5;
  SimTime probe_rtt_duration = Milliseconds(200);
  int bw_window_rounds = 2;  // ProbeBW cycles kept in the max filter
  SimTime min_rtt_window = Seconds(10);
  double pacing_margin = 0.01;
};

struct CcParams {
  CubicParams cubic;
  Bbr1Params bbr1;
  Bbr3Params bbr3;
};

std::unique_ptr<CongestionControl> MakeCongestionControl(
    CcKind kind, const CcParams& params, uint32_t mss, RngStream* rng);

}  // namespace hpwan

#endif  // HPWAN_CC_CONGESTION_CONTROL_H_
