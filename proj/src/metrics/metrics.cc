#include "hpwan/metrics/metrics.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hpwan {

double IdealFct(uint64_t file_bytes, double vc_rate_bps, uint32_t mss,
                uint32_t framing_bytes) {
  if (!(vc_rate_bps > 0)) throw std::invalid_argument("VC rate must be positive");
  if (mss == 0) throw std::invalid_argument("mss must be positive");
  const double goodput_fraction =
      static_cast<double>(mss) / (static_cast<double>(mss) + framing_bytes);
  return static_cast<double>(file_bytes) * 8.0 /
         (vc_rate_bps * goodput_fraction);
}

Efficiency FctEfficiency(double ideal_s, double measured_s) {
  if (!(measured_s > 0)) {
    throw std::invalid_argument("measured FCT must be positive");
  }
  if (measured_s < ideal_s) return {1.0, true};
  return {ideal_s / measured_s, false};
}

double OverheadPct(uint64_t retx_bytes, double duration_s,
                   double vc_rate_bps) {
  if (retx_bytes == 0) return 0.0;
  if (!(duration_s > 0) || !(vc_rate_bps > 0)) {
    throw std::invalid_argument("overhead needs a positive duration and rate");
  }
  return 100.0 * (static_cast<double>(retx_bytes) * 8.0 / duration_s) /
         vc_rate_bps;
}

ScenarioSummary Aggregate(const std::vector<TrialResult>& results,
                          uint32_t expected_trials) {
  ScenarioSummary summary;
  if (results.empty()) return summary;
  const TrialResult& first = results.front();
  struct Acc {
    double min_eff = 2.0;
    double max_eff = -1.0;
    // Summed in trial order so the mean does not depend on input order.
    std::map<uint32_t, double> overhead_by_trial;
  };
  std::map<uint32_t, Acc> by_vc;
  for (const TrialResult& r : results) {
    if (r.scenario != first.scenario || r.config != first.config ||
        r.cc != first.cc || r.flows != first.flows) {
      throw std::invalid_argument("cannot aggregate results of scenario '" +
                                  r.scenario + "' with '" + first.scenario +
                                  "'");
    }
    Acc& acc = by_vc[r.vc_id];
    acc.min_eff = std::min(acc.min_eff, r.fct_efficiency);
    acc.max_eff = std::max(acc.max_eff, r.fct_efficiency);
    if (!acc.overhead_by_trial.emplace(r.trial, r.overhead_pct).second) {
      throw std::invalid_argument("duplicate trial " + std::to_string(r.trial) +
                                  " for vc " + std::to_string(r.vc_id));
    }
  }
  summary.scenario_min_eff = 2.0;
  for (const auto& [vc, acc] : by_vc) {
    const auto n = static_cast<uint32_t>(acc.overhead_by_trial.size());
    if (expected_trials != 0 && n != expected_trials) {
      throw std::invalid_argument("vc " + std::to_string(vc) + " has " +
                                  std::to_string(n) + " trials, expected " +
                                  std::to_string(expected_trials));
    }
    double total = 0.0;
    for (const auto& [trial, pct] : acc.overhead_by_trial) total += pct;
    VcSummary s{vc, acc.min_eff, acc.max_eff, total / n, n};
    summary.scenario_min_eff = std::min(summary.scenario_min_eff, s.min_eff);
    summary.scenario_max_avg_overhead =
        std::max(summary.scenario_max_avg_overhead, s.avg_overhead_pct);
    summary.vcs.push_back(s);
  }
  return summary;
}

}  // namespace hpwan
