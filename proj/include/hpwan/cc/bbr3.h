#ifndef HPWAN_CC_BBR3_H_
#define HPWAN_CC_BBR3_H_

#include <array>
#include <cstdint>
#include <limits>

#include "hpwan/cc/bbr1.h"
#include "hpwan/cc/congestion_control.h"

namespace hpwan {

enum class Bbr3Phase { kDown, kCruise, kRefill, kUp };

// A compact BBR version 3. On top of the version 1 model it keeps an upper
// bound on inflight learned from loss (inflight_hi) and short-term lower
// bounds on bandwidth and inflight (bw_lo, inflight_lo) that shrink on lossy
// rounds. ProbeBW cycles Down, Cruise, Refill and Up, and ProbeRTT only
// halves the window.
class Bbr3 : public CongestionControl {
 public:
  static constexpr uint64_t kUnbounded = std::numeric_limits<uint64_t>::max();
  static constexpr double kDrainGain = 0.35;
  static constexpr double kDownGain = 0.9;
  static constexpr double kUpGain = 1.25;
  static constexpr uint32_t kMinPipeSegments = 4;
  static constexpr uint32_t kInitialWindowSegments = 10;
  static constexpr int kStartupFullLossCount = 6;
  static constexpr uint64_t kMaxProbeRounds = 63;

  Bbr3(const Bbr3Params& params, uint32_t mss, RngStream* rng);

  void OnAck(const RateSample& rs, SimTime now) override;
  void OnLoss(uint64_t lost_bytes, SimTime sent_at, SimTime now) override;
  void OnRto(SimTime now) override;

  uint64_t cwnd_bytes() const override { return cwnd_; }
  double pacing_rate_bps() const override { return pacing_rate_; }
  CcKind kind() const override { return CcKind::kBbr3; }

  BbrMode mode() const { return mode_; }
  bool suppresses_rate_samples() const override {
    return mode_ == BbrMode::kProbeRtt;
  }
  Bbr3Phase phase() const { return phase_; }
  double max_bw_bps() const { return std::max(bw_hi_[0], bw_hi_[1]); }
  // Bandwidth used for pacing: max_bw limited by bw_lo.
  double bw_bps() const;
  SimTime min_rtt() const { return min_rtt_; }
  uint64_t inflight_hi() const { return inflight_hi_; }
  uint64_t inflight_lo() const { return inflight_lo_; }
  double bw_lo_bps() const { return bw_lo_; }
  double pacing_gain() const { return pacing_gain_; }
  bool full_bw_reached() const { return full_bw_reached_; }
  // gain * bw * min_rtt in bytes.
  uint64_t Bdp(double bw_bps, double gain) const;
  uint64_t ProbeRttCwnd() const;

 private:
  void StartRound(const RateSample& rs);
  void AdaptLowerBounds();
  void ResetLowerBounds();
  bool IsProbingBandwidth() const;
  void CheckInflightTooHigh(const RateSample& rs, SimTime now);
  void CheckStartupDone(const RateSample& rs, SimTime now);
  void UpdateProbeBw(const RateSample& rs, SimTime now);
  void UpdateMinRttAndProbeRtt(const RateSample& rs, SimTime now);
  void EnterProbeBw(SimTime now);
  void StartDown(SimTime now);
  void StartCruise();
  void StartRefill(SimTime now);
  void StartUp(SimTime now);
  bool TimeToProbe(SimTime now) const;
  void SetPacingRate();
  void SetCwnd(const RateSample& rs);
  uint64_t HeadroomInflightHi() const;

  Bbr3Params params_;
  uint64_t mss_;
  RngStream* rng_;

  BbrMode mode_ = BbrMode::kStartup;
  Bbr3Phase phase_ = Bbr3Phase::kDown;

  // Max delivery rate in the current and previous ProbeBW cycle.
  std::array<double, 2> bw_hi_ = {0.0, 0.0};
  double bw_lo_ = std::numeric_limits<double>::infinity();
  uint64_t inflight_hi_ = kUnbounded;
  uint64_t inflight_lo_ = kUnbounded;
  double bw_latest_ = 0.0;
  uint64_t inflight_latest_ = 0;

  uint64_t round_count_ = 0;
  uint64_t next_round_delivered_ = 0;
  bool round_start_ = false;
  uint64_t round_start_delivered_ = 0;
  bool loss_in_round_ = false;
  uint64_t round_lost_bytes_ = 0;
  int round_loss_events_ = 0;
  uint64_t last_hi_cut_round_ = UINT64_MAX;

  double full_bw_ = 0.0;
  int full_bw_count_ = 0;
  bool full_bw_reached_ = false;

  SimTime cycle_stamp_ = 0;
  SimTime probe_wait_ = 0;
  uint64_t rounds_since_probe_ = 0;
  uint64_t refill_round_ = 0;
  int up_rounds_ = 0;

  SimTime min_rtt_ = 0;
  SimTime min_rtt_stamp_ = 0;
  SimTime probe_rtt_min_ = 0;
  SimTime probe_rtt_min_stamp_ = 0;
  SimTime probe_rtt_done_stamp_ = 0;
  bool probe_rtt_round_done_ = false;
  uint64_t prior_cwnd_ = 0;

  double pacing_gain_;
  double cwnd_gain_;
  uint64_t cwnd_;
  double pacing_rate_;
};

}  // namespace hpwan

#endif  // HPWAN_CC_BBR3_H_
