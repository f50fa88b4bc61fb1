#include "hpwan/cc/bbr3.h"

#include <algorithm>
#include <cmath>

namespace hpwan {

Bbr3::Bbr3(const Bbr3Params& params, uint32_t mss, RngStream* rng)
    : params_(params),
      mss_(mss),
      rng_(rng),
      pacing_gain_(params.startup_gain),
      cwnd_gain_(params.cwnd_gain),
      cwnd_(kInitialWindowSegments * static_cast<uint64_t>(mss)) {
  pacing_rate_ = params_.startup_gain * cwnd_ * 8.0 /
                 ToSeconds(Milliseconds(1)) * (1.0 - params_.pacing_margin);
}

double Bbr3::bw_bps() const { return std::min(max_bw_bps(), bw_lo_); }

uint64_t Bbr3::Bdp(double bw_bps, double gain) const {
  if (min_rtt_ <= 0) return kInitialWindowSegments * mss_;
  return static_cast<uint64_t>(gain * bw_bps / 8.0 * ToSeconds(min_rtt_));
}

uint64_t Bbr3::ProbeRttCwnd() const {
  return std::max<uint64_t>(Bdp(max_bw_bps(), params_.probe_rtt_cwnd_gain),
                            kMinPipeSegments * mss_);
}

uint64_t Bbr3::HeadroomInflightHi() const {
  if (inflight_hi_ == kUnbounded) return kUnbounded;
  return static_cast<uint64_t>(params_.headroom * inflight_hi_);
}

bool Bbr3::IsProbingBandwidth() const {
  return mode_ == BbrMode::kStartup ||
         (mode_ == BbrMode::kProbeBw &&
          (phase_ == Bbr3Phase::kRefill || phase_ == Bbr3Phase::kUp));
}

void Bbr3::OnAck(const RateSample& rs, SimTime now) {
  round_start_ = false;
  if (rs.has_bandwidth() && rs.prior_delivered >= next_round_delivered_) {
    StartRound(rs);
  }
  if (rs.has_bandwidth()) {
    const double bw = rs.delivery_rate_bps();
    bw_latest_ = std::max(bw_latest_, bw);
    inflight_latest_ = std::max(inflight_latest_, rs.delivered_delta_bytes);
    if (!rs.is_app_limited || bw >= max_bw_bps()) {
      bw_hi_[1] = std::max(bw_hi_[1], bw);
    }
  }
  CheckInflightTooHigh(rs, now);
  CheckStartupDone(rs, now);
  UpdateProbeBw(rs, now);
  UpdateMinRttAndProbeRtt(rs, now);
  SetPacingRate();
  SetCwnd(rs);
}

void Bbr3::StartRound(const RateSample& rs) {
  next_round_delivered_ = rs.delivered;
  ++round_count_;
  round_start_ = true;
  ++rounds_since_probe_;

  if (loss_in_round_ && !IsProbingBandwidth()) AdaptLowerBounds();
  if (mode_ == BbrMode::kStartup && !full_bw_reached_ && loss_in_round_) {
    const uint64_t delivered = rs.delivered - round_start_delivered_;
    if (round_loss_events_ >= kStartupFullLossCount &&
        round_lost_bytes_ >
            params_.loss_threshold * (delivered + round_lost_bytes_)) {
      full_bw_reached_ = true;
      inflight_hi_ = std::max(Bdp(max_bw_bps(), 1.0), inflight_latest_);
    }
  }
  if (mode_ == BbrMode::kProbeBw && phase_ == Bbr3Phase::kUp &&
      inflight_hi_ != kUnbounded) {
    // Probe the upper bound with growth that doubles every round.
    inflight_hi_ += mss_ << std::min(up_rounds_, 20);
    ++up_rounds_;
  }

  round_start_delivered_ = rs.delivered;
  loss_in_round_ = false;
  round_lost_bytes_ = 0;
  round_loss_events_ = 0;
  bw_latest_ = 0.0;
  inflight_latest_ = 0;
}

void Bbr3::AdaptLowerBounds() {
  const double keep = 1.0 - params_.beta;
  if (std::isinf(bw_lo_)) bw_lo_ = max_bw_bps();
  bw_lo_ = std::max(bw_latest_, keep * bw_lo_);
  if (inflight_lo_ == kUnbounded) inflight_lo_ = cwnd_;
  inflight_lo_ = std::max<uint64_t>(
      inflight_latest_, static_cast<uint64_t>(keep * inflight_lo_));
}

void Bbr3::ResetLowerBounds() {
  bw_lo_ = std::numeric_limits<double>::infinity();
  inflight_lo_ = kUnbounded;
}

void Bbr3::CheckInflightTooHigh(const RateSample& rs, SimTime now) {
  if (rs.lost == 0 || rs.tx_in_flight == 0 || rs.is_app_limited) return;
  if (rs.lost <= params_.loss_threshold * rs.tx_in_flight) return;
  if (last_hi_cut_round_ != round_count_) {
    last_hi_cut_round_ = round_count_;
    const uint64_t base =
        inflight_hi_ == kUnbounded ? rs.tx_in_flight : inflight_hi_;
    inflight_hi_ = std::max<uint64_t>(
        static_cast<uint64_t>((1.0 - params_.beta) * base),
        kMinPipeSegments * mss_);
  }
  if (mode_ == BbrMode::kStartup) full_bw_reached_ = true;
  if (mode_ == BbrMode::kProbeBw && phase_ == Bbr3Phase::kUp) StartDown(now);
}

void Bbr3::CheckStartupDone(const RateSample& rs, SimTime now) {
  if (mode_ == BbrMode::kStartup && !full_bw_reached_ && round_start_ &&
      !rs.is_app_limited) {
    const double bw = max_bw_bps();
    if (bw >= full_bw_ * 1.25) {
      full_bw_ = bw;
      full_bw_count_ = 0;
    } else {
      full_bw_reached_ = ++full_bw_count_ >= 3;
    }
  }
  if (mode_ == BbrMode::kStartup && full_bw_reached_) {
    mode_ = BbrMode::kDrain;
    pacing_gain_ = kDrainGain;
    cwnd_gain_ = params_.cwnd_gain;
  }
  if (mode_ == BbrMode::kDrain && rs.inflight <= Bdp(max_bw_bps(), 1.0)) {
    EnterProbeBw(now);
  }
}

void Bbr3::EnterProbeBw(SimTime now) {
  mode_ = BbrMode::kProbeBw;
  cwnd_gain_ = params_.cwnd_gain;
  StartDown(now);
}

void Bbr3::StartDown(SimTime now) {
  phase_ = Bbr3Phase::kDown;
  pacing_gain_ = kDownGain;
  cycle_stamp_ = now;
  rounds_since_probe_ = 0;
  up_rounds_ = 0;
  // A new cycle: the older half of the max filter ages out.
  bw_hi_[0] = bw_hi_[1];
  bw_hi_[1] = 0.0;
  probe_wait_ = Seconds(2) + static_cast<SimTime>(rng_->Uniform() * kNsPerSec);
}

void Bbr3::StartCruise() {
  phase_ = Bbr3Phase::kCruise;
  pacing_gain_ = 1.0;
}

void Bbr3::StartRefill(SimTime now) {
  (void)now;
  ResetLowerBounds();
  phase_ = Bbr3Phase::kRefill;
  pacing_gain_ = 1.0;
  refill_round_ = round_count_;
}

void Bbr3::StartUp(SimTime now) {
  phase_ = Bbr3Phase::kUp;
  pacing_gain_ = kUpGain;
  cycle_stamp_ = now;
  up_rounds_ = 0;
}

bool Bbr3::TimeToProbe(SimTime now) const {
  if (now - cycle_stamp_ >= probe_wait_) return true;
  // Probe at least as often as a Reno flow would fill the same BDP.
  const uint64_t bdp_segments = Bdp(max_bw_bps(), 1.0) / mss_;
  return rounds_since_probe_ >= std::min(bdp_segments, kMaxProbeRounds);
}

void Bbr3::UpdateProbeBw(const RateSample& rs, SimTime now) {
  if (mode_ != BbrMode::kProbeBw) return;
  switch (phase_) {
    case Bbr3Phase::kDown:
      if (TimeToProbe(now)) {
        StartRefill(now);
      } else if (rs.inflight <= std::min(Bdp(max_bw_bps(), 1.0),
                                         HeadroomInflightHi())) {
        StartCruise();
      }
      break;
    case Bbr3Phase::kCruise:
      if (TimeToProbe(now)) StartRefill(now);
      break;
    case Bbr3Phase::kRefill:
      if (round_start_ && round_count_ > refill_round_) StartUp(now);
      break;
    case Bbr3Phase::kUp:
      if (now - cycle_stamp_ > min_rtt_ &&
          rs.inflight >= Bdp(max_bw_bps(), kUpGain)) {
        StartDown(now);
      }
      break;
  }
}

void Bbr3::UpdateMinRttAndProbeRtt(const RateSample& rs, SimTime now) {
  const bool probe_expired =
      now > probe_rtt_min_stamp_ + params_.probe_rtt_interval;
  if (rs.rtt > 0 &&
      (probe_rtt_min_ == 0 || rs.rtt < probe_rtt_min_ || probe_expired)) {
    probe_rtt_min_ = rs.rtt;
    probe_rtt_min_stamp_ = now;
  }
  const bool min_rtt_expired = now > min_rtt_stamp_ + params_.min_rtt_window;
  if (probe_rtt_min_ > 0 &&
      (min_rtt_ == 0 || probe_rtt_min_ < min_rtt_ || min_rtt_expired)) {
    min_rtt_ = probe_rtt_min_;
    min_rtt_stamp_ = probe_rtt_min_stamp_;
  }
  if (probe_expired && mode_ != BbrMode::kProbeRtt) {
    mode_ = BbrMode::kProbeRtt;
    pacing_gain_ = 1.0;
    prior_cwnd_ = std::max(prior_cwnd_, cwnd_);
    probe_rtt_done_stamp_ = 0;
  }
  if (mode_ != BbrMode::kProbeRtt) return;
  if (probe_rtt_done_stamp_ == 0 && rs.inflight <= ProbeRttCwnd()) {
    probe_rtt_done_stamp_ = now + params_.probe_rtt_duration;
    probe_rtt_round_done_ = false;
    next_round_delivered_ = rs.delivered;
  } else if (probe_rtt_done_stamp_ != 0) {
    if (round_start_) probe_rtt_round_done_ = true;
    if (probe_rtt_round_done_ && now >= probe_rtt_done_stamp_) {
      probe_rtt_min_stamp_ = now;
      cwnd_ = std::max(cwnd_, prior_cwnd_);
      prior_cwnd_ = 0;
      ResetLowerBounds();
      if (full_bw_reached_) {
        mode_ = BbrMode::kProbeBw;
        cwnd_gain_ = params_.cwnd_gain;
        StartDown(now);
        StartCruise();
      } else {
        mode_ = BbrMode::kStartup;
        pacing_gain_ = params_.startup_gain;
      }
    }
  }
}

void Bbr3::SetPacingRate() {
  const double bw = bw_bps();
  if (bw <= 0) return;
  const double rate = pacing_gain_ * bw * (1.0 - params_.pacing_margin);
  if (full_bw_reached_ || rate > pacing_rate_) pacing_rate_ = rate;
}

void Bbr3::SetCwnd(const RateSample& rs) {
  const uint64_t min_cwnd = kMinPipeSegments * mss_;
  if (rs.acked_bytes > 0) {
    const uint64_t target = Bdp(bw_bps(), cwnd_gain_);
    if (full_bw_reached_) {
      cwnd_ = std::min(cwnd_ + rs.acked_bytes, target);
    } else if (cwnd_ < target || rs.delivered < kInitialWindowSegments * mss_) {
      cwnd_ += rs.acked_bytes;
    }
  }
  // ProbeRTT holds the window at half the estimated BDP.
  if (mode_ == BbrMode::kProbeRtt) cwnd_ = ProbeRttCwnd();
  // Loss-derived bounds win over every mode's own target, so after a lossy
  // round the window stays below inflight_hi even while draining or in
  // ProbeRTT.
  uint64_t cap = inflight_hi_;
  if (mode_ == BbrMode::kProbeRtt ||
      (mode_ == BbrMode::kProbeBw && phase_ == Bbr3Phase::kCruise)) {
    cap = HeadroomInflightHi();
  }
  cap = std::min(cap, inflight_lo_);
  cwnd_ = std::max(std::min(cwnd_, cap), min_cwnd);
}

void Bbr3::OnLoss(uint64_t lost_bytes, SimTime sent_at, SimTime now) {
  (void)sent_at;
  (void)now;
  loss_in_round_ = true;
  round_lost_bytes_ += lost_bytes;
  ++round_loss_events_;
}

void Bbr3::OnRto(SimTime now) {
  (void)now;
  loss_in_round_ = true;
  cwnd_ = mss_;
}

}  // namespace hpwan
