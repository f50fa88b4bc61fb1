#ifndef HPWAN_METRICS_METRICS_H_
#define HPWAN_METRICS_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

namespace hpwan {

// Outcome of one VC in one trial. This is also one row of the results CSV.
struct TrialResult {
  std::string scenario;
  std::string config;  // linux-fwd, dpdk-fwd or dpdk-shaping
  std::string cc;
  uint32_t flows = 0;
  uint32_t vc_id = 0;
  uint32_t trial = 0;
  uint64_t seed = 0;
  double fct_s = 0.0;
  double ideal_fct_s = 0.0;
  double fct_efficiency = 0.0;
  uint64_t retx_bytes = 0;
  double overhead_pct = 0.0;
  uint64_t drops_policer = 0;
  uint64_t drops_queue = 0;
  uint64_t drops_microburst = 0;
  uint64_t drops_forwarder = 0;
  uint64_t drops_shaper = 0;
  uint64_t ce_marks = 0;

  bool operator==(const TrialResult&) const = default;
};

struct VcSummary {
  uint32_t vc_id = 0;
  double min_eff = 0.0;
  double max_eff = 0.0;
  double avg_overhead_pct = 0.0;
  uint32_t trials = 0;

  bool operator==(const VcSummary&) const = default;
};

struct ScenarioSummary {
  std::vector<VcSummary> vcs;  // ascending vc_id
  double scenario_min_eff = 0.0;
  double scenario_max_avg_overhead = 0.0;

  bool operator==(const ScenarioSummary&) const = default;
};

// Transfer time of `file_bytes` at the VC rate when every segment of `mss`
// payload bytes also carries `framing_bytes` of headers and framing.
// Throws std::invalid_argument for a zero rate or mss.
double IdealFct(uint64_t file_bytes, double vc_rate_bps, uint32_t mss,
                uint32_t framing_bytes);

struct Efficiency {
  double value = 0.0;
  // The measurement beat the ideal, which points at a framing mismatch.
  bool clamped = false;
};

// ideal / measured, capped at 1. Throws std::invalid_argument when
// measured_s <= 0.
Efficiency FctEfficiency(double ideal_s, double measured_s);

// Average retransmission bandwidth as a percentage of the VC rate.
double OverheadPct(uint64_t retx_bytes, double duration_s, double vc_rate_bps);

// Per-VC min/max efficiency and mean overhead, plus the scenario minimum
// efficiency and largest per-VC mean overhead. All results must share one
// scenario, config, cc and flow count (std::invalid_argument otherwise).
// When expected_trials is non-zero every VC must have exactly that many.
ScenarioSummary Aggregate(const std::vector<TrialResult>& results,
                          uint32_t expected_trials = 0);

}  // namespace hpwan

#endif  // HPWAN_METRICS_METRICS_H_
