#ifndef HPWAN_SCENARIO_CONFIG_H_
#define HPWAN_SCENARIO_CONFIG_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hpwan/cc/congestion_control.h"
#include "hpwan/net/forwarder.h"
#include "hpwan/net/microburst.h"

namespace hpwan {

enum class Topology { kFull8, kSingleVc };

// The three data-path setups compared in the study.
enum class DataPath { kLinuxFwd, kDpdkFwd, kDpdkShaping };

const char* TopologyName(Topology t);
const char* DataPathName(DataPath d);

struct VcSpec {
  uint64_t rate_bps = 20'000'000'000ULL;
  double rtt_ms = 14.0;
  // Indices of the shared elements the VC crosses.
  uint32_t edge_router = 0;  // sender-side ER host (full8 only)
  uint32_t src_router = 0;   // source-site SmartNIC router (R1, R2)
  uint32_t dst_router = 0;   // destination-site router (R3, R4)

  double BdpBytes() const { return rate_bps / 8.0 * rtt_ms / 1e3; }
  bool operator==(const VcSpec&) const = default;
};

struct ScenarioConfig {
  std::string name = "custom";
  Topology topology = Topology::kFull8;
  DataPath data_path = DataPath::kDpdkShaping;
  CcKind cc = CcKind::kBbr1;
  uint32_t flows_per_vc = 1;
  uint64_t file_bytes = 10'000'000'000ULL;
  uint32_t trials = 20;
  uint64_t master_seed = 1;
  std::vector<VcSpec> vcs;

  // Shared 100G links; VC reservations and the EF class are capped at
  // reservation_fraction of this rate.
  uint64_t link_rate_bps = 100'000'000'000ULL;
  double reservation_fraction = 0.8;
  uint64_t ef_burst_bytes = 262'144;

  uint64_t policer_cbs_bytes = 262'144;
  // 0 shapes each VC at its reservation.
  uint64_t shaper_rate_bps = 0;
  double shaper_backlog_bdp = 4.0;
  // Router buffers and ECN threshold as multiples of the largest BDP of the
  // VCs crossing the router.
  double queue_bdp = 8.0;
  double ecn_bdp = 1.0;

  uint32_t mss = 8960;
  uint32_t framing_bytes = 78;
  uint32_t ack_decimation = 1;
  double rto_min_ms = 200.0;

  ForwarderParams linux_forwarder = ForwarderParams::LinuxDefaults();
  ForwarderParams dpdk_forwarder = ForwarderParams::DpdkDefaults();
  MicroburstParams microburst;
  CcParams cc_params;

  // A trial that has not finished by this virtual time fails.
  double max_sim_time_s = 3600.0;

  uint64_t ShaperRate(const VcSpec& vc) const {
    return shaper_rate_bps != 0 ? shaper_rate_bps : vc.rate_bps;
  }
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Default VC layout of a topology.
std::vector<VcSpec> DefaultVcs(Topology t);

// Parses a JSON scenario, applies defaults and "key.path=value" overrides,
// and validates the result. Throws ConfigError naming the offending key.
ScenarioConfig LoadScenario(std::string_view json_text,
                            const std::vector<std::string>& overrides = {});

// Applies overrides to an existing config (e.g. a preset).
ScenarioConfig ApplyOverrides(const ScenarioConfig& base,
                              const std::vector<std::string>& overrides);

// Canonical JSON with every key present; LoadScenario(ToJson(c)) == c.
std::string ScenarioToJson(const ScenarioConfig& config);

// Throws ConfigError on reservation-cap or other consistency violations.
void ValidateScenario(const ScenarioConfig& config);

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

// Named experiment presets.
std::vector<std::string> PresetNames();
// Throws ConfigError listing the known names if `name` is not one.
ScenarioConfig Preset(std::string_view name);
std::vector<ScenarioConfig> PresetMatrix();

}  // namespace hpwan

#endif  // HPWAN_SCENARIO_CONFIG_H_
