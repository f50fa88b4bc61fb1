#ifndef HPWAN_CC_CUBIC_H_
#define HPWAN_CC_CUBIC_H_

#include "hpwan/cc/congestion_control.h"

namespace hpwan {

// W(t) = c * (t - k)^3 + w_max, all in segments and seconds.
double CubicWindow(double t_seconds, double k_seconds, double w_max, double c);
// k = cbrt(w_max * (1 - beta) / c).
double CubicK(double w_max, double beta, double c);

// CUBIC with slow start from IW10, one multiplicative decrease per window of
// data, and the cubic growth curve set directly on every ACK in congestion
// avoidance. CE marks count as loss when ECN is enabled.
class Cubic : public CongestionControl {
 public:
  static constexpr uint32_t kInitialWindowSegments = 10;

  Cubic(const CubicParams& params, uint32_t mss);

  void OnAck(const RateSample& rs, SimTime now) override;
  void OnLoss(uint64_t lost_bytes, SimTime sent_at, SimTime now) override;
  void OnCe(SimTime sent_at, SimTime now) override;
  void OnRto(SimTime now) override;

  uint64_t cwnd_bytes() const override;
  double pacing_rate_bps() const override;
  CcKind kind() const override { return CcKind::kCubic; }

  bool in_slow_start() const { return cwnd_ < ssthresh_; }
  double cwnd_segments() const { return cwnd_; }
  double w_max_segments() const { return w_max_; }
  double k_seconds() const { return k_; }
  // Start of the current congestion-avoidance epoch; negative if none.
  SimTime epoch_start() const { return epoch_start_; }
  // Window the curve would prescribe at `now` (valid inside an epoch).
  double CurveSegments(SimTime now) const;
  double TcpFriendlySegments(SimTime now) const;

 private:
  void Reduce(SimTime now);
  void StartEpoch(SimTime now);

  CubicParams params_;
  double mss_;
  // Window state in segments.
  double cwnd_ = kInitialWindowSegments;
  double ssthresh_;
  double w_max_ = 0.0;
  double origin_ = 0.0;
  double k_ = 0.0;
  double w_est_start_ = 0.0;
  SimTime epoch_start_ = -1;
  SimTime last_reduction_ = -1;
  SimTime srtt_ = 0;
  SimTime min_rtt_ = 0;
};

}  // namespace hpwan

#endif  // HPWAN_CC_CUBIC_H_
