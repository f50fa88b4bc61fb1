#include "hpwan/cc/bbr1.h"

#include <algorithm>
#include <cmath>

namespace hpwan {

Bbr1::Bbr1(const Bbr1Params& params, uint32_t mss, RngStream* rng)
    : params_(params),
      mss_(mss),
      rng_(rng),
      bw_(params.bw_window_rounds),
      pacing_gain_(params.high_gain),
      cwnd_gain_(params.high_gain),
      cwnd_(kInitialWindowSegments * static_cast<uint64_t>(mss)) {
  // No RTT sample yet: assume 1 ms, as a fresh connection would.
  pacing_rate_ = params_.high_gain * cwnd_ * 8.0 / ToSeconds(Milliseconds(1)) *
                 (1.0 - params_.pacing_margin);
}

uint64_t Bbr1::Inflight(double bw_bps, double gain) const {
  if (min_rtt_ <= 0) return kInitialWindowSegments * mss_;
  return static_cast<uint64_t>(gain * bw_bps / 8.0 * ToSeconds(min_rtt_));
}

void Bbr1::OnAck(const RateSample& rs, SimTime now) {
  UpdateBw(rs);
  UpdateCyclePhase(rs, now);
  CheckFullBwReached(rs);
  CheckDrain(rs, now);
  UpdateMinRttAndProbeRtt(rs, now);
  SetPacingRate();
  SetCwnd(rs);
}

void Bbr1::UpdateBw(const RateSample& rs) {
  round_start_ = false;
  if (!rs.has_bandwidth()) return;
  if (rs.prior_delivered >= next_round_delivered_) {
    next_round_delivered_ = rs.delivered;
    ++round_count_;
    round_start_ = true;
  }
  const double bw = rs.delivery_rate_bps();
  if (!rs.is_app_limited || bw >= bw_.Best()) {
    bw_.Update(bw, static_cast<int64_t>(round_count_));
  }
}

bool Bbr1::ShouldAdvanceCycle(const RateSample& rs, SimTime now) const {
  const bool full_length = now - cycle_stamp_ > min_rtt_;
  if (pacing_gain_ == 1.0) return full_length;
  const uint64_t inflight = rs.prior_inflight;
  if (pacing_gain_ > 1.0) {
    return full_length && (rs.newly_lost_bytes > 0 ||
                           inflight >= Inflight(bw_.Best(), pacing_gain_));
  }
  return full_length || inflight <= Inflight(bw_.Best(), 1.0);
}

void Bbr1::AdvanceCycle(SimTime now) {
  cycle_index_ = (cycle_index_ + 1) % static_cast<int>(kPacingGainCycle.size());
  cycle_stamp_ = now;
  pacing_gain_ = kPacingGainCycle[cycle_index_];
}

void Bbr1::UpdateCyclePhase(const RateSample& rs, SimTime now) {
  if (mode_ == BbrMode::kProbeBw && ShouldAdvanceCycle(rs, now)) {
    AdvanceCycle(now);
  }
}

void Bbr1::CheckFullBwReached(const RateSample& rs) {
  if (full_bw_reached_ || !round_start_ || rs.is_app_limited) return;
  const double bw = bw_.Best();
  if (bw >= full_bw_ * 1.25) {
    full_bw_ = bw;
    full_bw_count_ = 0;
    return;
  }
  full_bw_reached_ = ++full_bw_count_ >= 3;
}

void Bbr1::CheckDrain(const RateSample& rs, SimTime now) {
  if (mode_ == BbrMode::kStartup && full_bw_reached_) {
    mode_ = BbrMode::kDrain;
    pacing_gain_ = 1.0 / params_.high_gain;
    cwnd_gain_ = params_.high_gain;
  }
  if (mode_ == BbrMode::kDrain && rs.inflight <= Inflight(bw_.Best(), 1.0)) {
    ResetProbeBw(now);
  }
}

void Bbr1::ResetProbeBw(SimTime now) {
  mode_ = BbrMode::kProbeBw;
  cwnd_gain_ = params_.cwnd_gain;
  // Start anywhere except the draining phase, then step once.
  cycle_index_ = static_cast<int>(kPacingGainCycle.size()) - 1 -
                 static_cast<int>(rng_->UniformInt(kPacingGainCycle.size() - 1));
  AdvanceCycle(now);
}

void Bbr1::ResetStartup() {
  mode_ = BbrMode::kStartup;
  pacing_gain_ = params_.high_gain;
  cwnd_gain_ = params_.high_gain;
}

void Bbr1::UpdateMinRttAndProbeRtt(const RateSample& rs, SimTime now) {
  const bool expired = now > min_rtt_stamp_ + params_.min_rtt_window;
  if (rs.rtt > 0 && (min_rtt_ == 0 || rs.rtt < min_rtt_ || expired)) {
    min_rtt_ = rs.rtt;
    min_rtt_stamp_ = now;
  }
  if (params_.probe_rtt_duration > 0 && expired &&
      mode_ != BbrMode::kProbeRtt) {
    mode_ = BbrMode::kProbeRtt;
    pacing_gain_ = 1.0;
    cwnd_gain_ = 1.0;
    prior_cwnd_ = std::max(prior_cwnd_, cwnd_);
    probe_rtt_done_stamp_ = 0;
  }
  if (mode_ != BbrMode::kProbeRtt) return;
  if (probe_rtt_done_stamp_ == 0 && rs.inflight <= kMinPipeSegments * mss_) {
    probe_rtt_done_stamp_ = now + params_.probe_rtt_duration;
    probe_rtt_round_done_ = false;
    next_round_delivered_ = rs.delivered;
  } else if (probe_rtt_done_stamp_ != 0) {
    if (round_start_) probe_rtt_round_done_ = true;
    if (probe_rtt_round_done_ && now >= probe_rtt_done_stamp_) {
      min_rtt_stamp_ = now;
      cwnd_ = std::max(cwnd_, prior_cwnd_);
      prior_cwnd_ = 0;
      if (full_bw_reached_) {
        ResetProbeBw(now);
      } else {
        ResetStartup();
      }
    }
  }
}

void Bbr1::SetPacingRate() {
  const double bw = bw_.Best();
  if (bw <= 0) return;
  const double rate = pacing_gain_ * bw * (1.0 - params_.pacing_margin);
  if (full_bw_reached_ || rate > pacing_rate_) pacing_rate_ = rate;
}

void Bbr1::SetCwnd(const RateSample& rs) {
  const uint64_t min_cwnd = kMinPipeSegments * mss_;
  if (rs.acked_bytes > 0) {
    const uint64_t target = Inflight(bw_.Best(), cwnd_gain_);
    if (full_bw_reached_) {
      cwnd_ = std::min(cwnd_ + rs.acked_bytes, target);
    } else if (cwnd_ < target || rs.delivered < kInitialWindowSegments * mss_) {
      cwnd_ += rs.acked_bytes;
    }
    cwnd_ = std::max(cwnd_, min_cwnd);
  }
  if (mode_ == BbrMode::kProbeRtt) cwnd_ = std::min(cwnd_, min_cwnd);
}

void Bbr1::OnLoss(uint64_t lost_bytes, SimTime sent_at, SimTime now) {
  (void)lost_bytes;
  (void)sent_at;
  (void)now;
}

void Bbr1::OnRto(SimTime now) {
  (void)now;
  cwnd_ = mss_;
}

}  // namespace hpwan
