#include "hpwan/cc/cubic.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hpwan {

double CubicWindow(double t_seconds, double k_seconds, double w_max,
                   double c) {
  const double d = t_seconds - k_seconds;
  return c * d * d * d + w_max;
}

double CubicK(double w_max, double beta, double c) {
  return std::cbrt(w_max * (1.0 - beta) / c);
}

Cubic::Cubic(const CubicParams& params, uint32_t mss)
    : params_(params),
      mss_(mss),
      ssthresh_(std::numeric_limits<double>::infinity()) {}

uint64_t Cubic::cwnd_bytes() const {
  return static_cast<uint64_t>(cwnd_ * mss_);
}

double Cubic::pacing_rate_bps() const {
  if (srtt_ <= 0) return std::numeric_limits<double>::infinity();
  const double ratio = cwnd_ < ssthresh_ / 2 ? 2.0 : 1.2;
  return ratio * cwnd_ * mss_ * 8.0 / ToSeconds(srtt_);
}

double Cubic::CurveSegments(SimTime now) const {
  return CubicWindow(ToSeconds(now - epoch_start_), k_, origin_, params_.c);
}

double Cubic::TcpFriendlySegments(SimTime now) const {
  if (min_rtt_ <= 0) return 0.0;
  const double b = params_.beta;
  return w_est_start_ + 3.0 * (1.0 - b) / (1.0 + b) *
                            (ToSeconds(now - epoch_start_) / ToSeconds(min_rtt_));
}

void Cubic::StartEpoch(SimTime now) {
  epoch_start_ = now;
  w_est_start_ = cwnd_;
  if (cwnd_ < w_max_) {
    k_ = std::cbrt((w_max_ - cwnd_) / params_.c);
    origin_ = w_max_;
  } else {
    k_ = 0.0;
    origin_ = cwnd_;
  }
}

void Cubic::OnAck(const RateSample& rs, SimTime now) {
  srtt_ = rs.srtt;
  if (rs.rtt > 0 && (min_rtt_ == 0 || rs.rtt < min_rtt_)) min_rtt_ = rs.rtt;
  if (rs.acked_bytes == 0) return;
  if (cwnd_ < ssthresh_) {
    cwnd_ += rs.acked_bytes / mss_;
    return;
  }
  if (epoch_start_ < 0) StartEpoch(now);
  double target = CurveSegments(now);
  if (params_.tcp_friendly) target = std::max(target, TcpFriendlySegments(now));
  cwnd_ = std::max({cwnd_, target, 2.0});
}

void Cubic::Reduce(SimTime now) {
  w_max_ = cwnd_;
  cwnd_ = std::max(cwnd_ * params_.beta, 2.0);
  ssthresh_ = cwnd_;
  last_reduction_ = now;
  epoch_start_ = now;
  w_est_start_ = cwnd_;
  k_ = CubicK(w_max_, params_.beta, params_.c);
  origin_ = w_max_;
}

void Cubic::OnLoss(uint64_t lost_bytes, SimTime sent_at, SimTime now) {
  (void)lost_bytes;
  // Segments sent before the last reduction belong to the window that was
  // already reduced for.
  if (sent_at < last_reduction_) return;
  Reduce(now);
}

void Cubic::OnCe(SimTime sent_at, SimTime now) {
  if (params_.ecn) OnLoss(0, sent_at, now);
}

void Cubic::OnRto(SimTime now) {
  w_max_ = cwnd_;
  ssthresh_ = std::max(cwnd_ * params_.beta, 2.0);
  cwnd_ = 1.0;
  last_reduction_ = now;
  epoch_start_ = -1;
}

}  // namespace hpwan
