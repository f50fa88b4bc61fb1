#ifndef HPWAN_CC_BBR1_H_
#define HPWAN_CC_BBR1_H_

#include <array>

#include "hpwan/cc/congestion_control.h"
#include "hpwan/cc/windowed_filter.h"

namespace hpwan {

enum class BbrMode { kStartup, kDrain, kProbeBw, kProbeRtt };

// BBR version 1: model-based rate control from a max-filtered delivery rate
// and a min-filtered RTT. Packet loss does not move the model.
class Bbr1 : public CongestionControl {
 public:
  static constexpr std::array<double, 8> kPacingGainCycle = {
      1.25, 0.75, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
  static constexpr uint32_t kMinPipeSegments = 4;
  static constexpr uint32_t kInitialWindowSegments = 10;

  Bbr1(const Bbr1Params& params, uint32_t mss, RngStream* rng);

  void OnAck(const RateSample& rs, SimTime now) override;
  void OnLoss(uint64_t lost_bytes, SimTime sent_at, SimTime now) override;
  void OnRto(SimTime now) override;

  uint64_t cwnd_bytes() const override { return cwnd_; }
  double pacing_rate_bps() const override { return pacing_rate_; }
  CcKind kind() const override { return CcKind::kBbr1; }

  BbrMode mode() const { return mode_; }
  bool suppresses_rate_samples() const override {
    return mode_ == BbrMode::kProbeRtt;
  }
  double max_bw_bps() const { return bw_.Best(); }
  SimTime min_rtt() const { return min_rtt_; }
  double pacing_gain() const { return pacing_gain_; }
  double cwnd_gain() const { return cwnd_gain_; }
  int cycle_index() const { return cycle_index_; }
  bool full_bw_reached() const { return full_bw_reached_; }
  uint64_t round_count() const { return round_count_; }
  // gain * bw * min_rtt in bytes.
  uint64_t Inflight(double bw_bps, double gain) const;

 private:
  void UpdateBw(const RateSample& rs);
  void UpdateCyclePhase(const RateSample& rs, SimTime now);
  bool ShouldAdvanceCycle(const RateSample& rs, SimTime now) const;
  void AdvanceCycle(SimTime now);
  void CheckFullBwReached(const RateSample& rs);
  void CheckDrain(const RateSample& rs, SimTime now);
  void UpdateMinRttAndProbeRtt(const RateSample& rs, SimTime now);
  void ResetProbeBw(SimTime now);
  void ResetStartup();
  void SetPacingRate();
  void SetCwnd(const RateSample& rs);

  Bbr1Params params_;
  uint64_t mss_;
  RngStream* rng_;

  BbrMode mode_ = BbrMode::kStartup;
  WindowedMaxFilter<double> bw_;
  SimTime min_rtt_ = 0;
  SimTime min_rtt_stamp_ = 0;

  uint64_t round_count_ = 0;
  uint64_t next_round_delivered_ = 0;
  bool round_start_ = false;

  double full_bw_ = 0.0;
  int full_bw_count_ = 0;
  bool full_bw_reached_ = false;

  int cycle_index_ = 0;
  SimTime cycle_stamp_ = 0;
  double pacing_gain_;
  double cwnd_gain_;

  SimTime probe_rtt_done_stamp_ = 0;
  bool probe_rtt_round_done_ = false;
  uint64_t prior_cwnd_ = 0;

  uint64_t cwnd_;
  double pacing_rate_;
};

}  // namespace hpwan

#endif  // HPWAN_CC_BBR1_H_
