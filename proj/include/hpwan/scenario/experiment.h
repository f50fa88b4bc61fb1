#ifndef HPWAN_SCENARIO_EXPERIMENT_H_
#define HPWAN_SCENARIO_EXPERIMENT_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hpwan/metrics/metrics.h"
#include "hpwan/net/network.h"
#include "hpwan/scenario/config.h"
#include "hpwan/sim/simulator.h"
#include "hpwan/transport/transfer.h"

namespace hpwan {

// Seed of trial `trial`, derived from the master seed only, so trials are
// independent of execution order and thread count.
uint64_t TrialSeed(uint64_t master_seed, uint32_t trial);

// Optional instrumentation for a single trial.
struct TrialHooks {
  // Called for each VC's transfer after it is built and before it starts.
  std::function<void(uint32_t vc, Transfer& transfer)> on_transfer;
  // Called once the run has finished (successfully or not).
  std::function<void(const Network& net, const Simulator& sim)> on_finish;
};

struct TrialOutcome {
  uint32_t trial = 0;
  uint64_t seed = 0;
  bool ok = false;
  std::string diagnostics;            // why the trial failed
  std::vector<std::string> warnings;  // e.g. efficiency clamped at 1
  std::vector<TrialResult> rows;      // one per VC, ascending vc_id
  std::vector<double> second_half_goodput_bps;  // per VC
  std::vector<VcCounters> counters;             // per VC
  uint64_t events = 0;
};

TrialOutcome RunTrial(const ScenarioConfig& config, uint32_t trial,
                      const TrialHooks& hooks = {});

struct ExperimentResult {
  std::vector<TrialResult> rows;       // trial-major, then vc_id
  std::vector<TrialOutcome> outcomes;  // one per trial, in trial order
  bool all_ok() const;
};

// Runs every trial of `config`. parallel <= 1 is the serial reference loop;
// larger values run trials on that many OpenMP threads. The output does not
// depend on `parallel`.
ExperimentResult RunExperiment(const ScenarioConfig& config, int parallel = 1);

}  // namespace hpwan

#endif  // HPWAN_SCENARIO_EXPERIMENT_H_
