#include "hpwan/scenario/experiment.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "hpwan/net/packet.h"
#include "hpwan/sim/rng.h"

namespace hpwan {
namespace {

// Largest BDP among the VCs in `members`.
double MaxBdp(const ScenarioConfig& cfg, const std::vector<uint32_t>& members) {
  double bdp = 0.0;
  for (uint32_t vc : members) bdp = std::max(bdp, cfg.vcs[vc].BdpBytes());
  return bdp;
}

uint64_t Bytes(double b) { return static_cast<uint64_t>(b); }

// Node configuration of a router VM (edge router or SmartNIC router).
NodeConfig RouterNode(const ScenarioConfig& cfg, std::string name,
                      const std::vector<uint32_t>& members, bool ecn) {
  NodeConfig n;
  n.name = std::move(name);
  n.forwarder = cfg.data_path == DataPath::kLinuxFwd ? cfg.linux_forwarder
                                                     : cfg.dpdk_forwarder;
  n.port_rate_bps = cfg.link_rate_bps;
  const double bdp = MaxBdp(cfg, members);
  n.queue_capacity_bytes = Bytes(cfg.queue_bdp * bdp);
  if (ecn) n.ecn_threshold_bytes = Bytes(cfg.ecn_bdp * bdp);
  return n;
}

// Port toward or inside the FABRIC core: EF class capped at the reservation
// fraction, no ECN.
NodeConfig FabricNode(const ScenarioConfig& cfg, std::string name,
                      const std::vector<uint32_t>& members) {
  NodeConfig n;
  n.name = std::move(name);
  n.port_rate_bps = cfg.link_rate_bps;
  n.queue_capacity_bytes = Bytes(cfg.queue_bdp * MaxBdp(cfg, members));
  n.ef_fraction = cfg.reservation_fraction;
  n.ef_burst_bytes = cfg.ef_burst_bytes;
  return n;
}

NodeConfig HostNode(const ScenarioConfig& cfg, std::string name) {
  NodeConfig n;
  n.name = std::move(name);
  n.port_rate_bps = cfg.link_rate_bps;
  return n;
}

// Builds the data path of every VC. Layout per VC:
//   sender DTN -> ER (full8 only) -> source router -> FABRIC ingress port
//   (policer, EF) -> long haul -> core port toward the destination router
//   (EF) -> destination router -> destination DTN access port -> receiver.
// The sender-side shaper sits on the ER, or on the source router when there
// is no ER.
struct Topo {
  std::vector<std::vector<Hop>> paths;
  std::vector<NodeId> sender_access;
  std::vector<NodeId> receiver_access;
};

Topo BuildTopology(const ScenarioConfig& cfg, Network& net) {
  const auto n = static_cast<uint32_t>(cfg.vcs.size());
  const bool has_er = cfg.topology == Topology::kFull8;

  auto group = [&](uint32_t VcSpec::*field) {
    std::vector<std::vector<uint32_t>> groups;
    for (uint32_t vc = 0; vc < n; ++vc) {
      const uint32_t g = cfg.vcs[vc].*field;
      if (groups.size() <= g) groups.resize(g + 1);
      groups[g].push_back(vc);
    }
    return groups;
  };
  const auto by_er = group(&VcSpec::edge_router);
  const auto by_src = group(&VcSpec::src_router);
  const auto by_dst = group(&VcSpec::dst_router);

  Topo topo;
  std::vector<NodeId> hosts(n), access(n);
  for (uint32_t vc = 0; vc < n; ++vc) {
    hosts[vc] = net.AddNode(HostNode(cfg, "S" + std::to_string(vc + 1)));
  }
  std::vector<NodeId> ers, srcs, ingress, core, dsts;
  if (has_er) {
    for (size_t k = 0; k < by_er.size(); ++k) {
      ers.push_back(net.AddNode(
          RouterNode(cfg, "ER" + std::to_string(k + 1), by_er[k], true)));
    }
  }
  for (size_t j = 0; j < by_src.size(); ++j) {
    const std::string r = "R" + std::to_string(j + 1);
    srcs.push_back(net.AddNode(RouterNode(cfg, r, by_src[j], true)));
    ingress.push_back(net.AddNode(FabricNode(cfg, r + "->F1", by_src[j])));
  }
  for (size_t d = 0; d < by_dst.size(); ++d) {
    const std::string r = "R" + std::to_string(d + 3);
    core.push_back(net.AddNode(FabricNode(cfg, "F1->" + r, by_dst[d])));
    dsts.push_back(net.AddNode(RouterNode(cfg, r, by_dst[d], true)));
  }
  for (uint32_t vc = 0; vc < n; ++vc) {
    NodeConfig a = HostNode(cfg, "D" + std::to_string(vc + 1));
    a.queue_capacity_bytes = Bytes(cfg.queue_bdp * cfg.vcs[vc].BdpBytes());
    access[vc] = net.AddNode(a);
  }

  for (uint32_t vc = 0; vc < n; ++vc) {
    const VcSpec& spec = cfg.vcs[vc];
    const NodeId shaper_node = has_er ? ers[spec.edge_router]
                                      : srcs[spec.src_router];
    if (cfg.data_path == DataPath::kDpdkShaping) {
      net.AttachShaper(shaper_node, vc, cfg.ShaperRate(spec),
                       Bytes(cfg.shaper_backlog_bdp * spec.BdpBytes()));
    }
    net.AttachPolicer(ingress[spec.src_router], vc,
                      LeakyBucketProfile{spec.rate_bps, cfg.policer_cbs_bytes});
    const NodeId sender_side = has_er ? ers[spec.edge_router] : hosts[vc];
    topo.sender_access.push_back(sender_side);
    topo.receiver_access.push_back(access[vc]);
    if (cfg.microburst.enabled) {
      const NodeId mb_node =
          cfg.microburst.location == MicroburstLocation::kSenderAccess
              ? sender_side
              : access[vc];
      net.AttachMicroburst(mb_node, vc, cfg.microburst);
    }

    std::vector<Hop> hops;
    hops.push_back({hosts[vc], 0});
    if (has_er) hops.push_back({ers[spec.edge_router], 0});
    hops.push_back({srcs[spec.src_router], 0});
    hops.push_back({ingress[spec.src_router], 0});
    hops.push_back({core[spec.dst_router], Milliseconds(spec.rtt_ms / 2)});
    hops.push_back({dsts[spec.dst_router], 0});
    hops.push_back({access[vc], 0});
    topo.paths.push_back(std::move(hops));
  }
  return topo;
}

std::string DescribeCounters(uint32_t vc, const VcCounters& c) {
  std::ostringstream os;
  os << "vc " << vc << ": sent=" << c.sent << " delivered=" << c.delivered
     << " drops{policer=" << c.drops.policer << " queue=" << c.drops.queue
     << " microburst=" << c.drops.microburst
     << " forwarder=" << c.drops.forwarder << " shaper=" << c.drops.shaper
     << "}";
  return os.str();
}

}  // namespace

uint64_t TrialSeed(uint64_t master_seed, uint32_t trial) {
  return DeriveSeed(master_seed, "trial." + std::to_string(trial));
}

TrialOutcome RunTrial(const ScenarioConfig& cfg, uint32_t trial,
                      const TrialHooks& hooks) {
  TrialOutcome out;
  out.trial = trial;
  out.seed = TrialSeed(cfg.master_seed, trial);
  const auto n = static_cast<uint32_t>(cfg.vcs.size());

  Simulator sim(out.seed);
  PacketPool pool;
  Network net(&sim, &pool, n);
  Topo topo = BuildTopology(cfg, net);

  std::vector<std::unique_ptr<Transfer>> transfers;
  uint32_t remaining = n;
  for (uint32_t vc = 0; vc < n; ++vc) {
    TransportConfig tc;
    tc.mss = cfg.mss;
    tc.framing_bytes = cfg.framing_bytes;
    tc.ack_decimation = cfg.ack_decimation;
    tc.rto_min = Milliseconds(cfg.rto_min_ms);
    tc.ack_delay = Milliseconds(cfg.vcs[vc].rtt_ms / 2);
    auto t = std::make_unique<Transfer>(&sim, &net, &pool, vc, cfg.file_bytes,
                                        cfg.flows_per_vc, cfg.cc,
                                        cfg.cc_params, tc);
    t->set_completion_callback([&](Transfer&) {
      if (--remaining == 0) sim.RequestStop();
    });
    net.SetPath(vc, topo.paths[vc], t.get());
    if (hooks.on_transfer) hooks.on_transfer(vc, *t);
    transfers.push_back(std::move(t));
  }
  for (auto& t : transfers) t->Start(0);

  const SimTime deadline = Seconds(cfg.max_sim_time_s);
  RunStats stats = sim.RunUntil(deadline);
  // Let packets still in the network (late duplicates) drain so the packet
  // accounting below is exact.
  if (remaining == 0) {
    const RunStats tail = sim.RunUntil(deadline);
    stats.events_executed += tail.events_executed;
  }
  out.events = stats.events_executed;
  if (hooks.on_finish) hooks.on_finish(net, sim);

  std::vector<std::string> errors;
  if (net.in_flight() != 0) {
    errors.push_back(std::to_string(net.in_flight()) +
                     " packets still in the network");
  }
  const std::string cc_name(CcName(cfg.cc));
  for (uint32_t vc = 0; vc < n; ++vc) {
    const Transfer& t = *transfers[vc];
    const VcCounters& c = net.counters(vc);
    out.counters.push_back(c);
    out.second_half_goodput_bps.push_back(t.SecondHalfGoodputBps());
    if (c.sent != c.delivered + c.drops.total()) {
      errors.push_back("conservation violated, " + DescribeCounters(vc, c));
    }
    if (c.retx_payload_bytes != t.retx_bytes()) {
      errors.push_back("vc " + std::to_string(vc) +
                       ": retransmitted bytes disagree (network " +
                       std::to_string(c.retx_payload_bytes) + ", sender " +
                       std::to_string(t.retx_bytes()) + ")");
    }
    if (!t.complete()) {
      errors.push_back("vc " + std::to_string(vc) + ": transfer incomplete at " +
                       std::to_string(cfg.max_sim_time_s) + " s (" +
                       std::to_string(t.received().prefix()) + " of " +
                       std::to_string(cfg.file_bytes) + " bytes)");
      continue;
    }
    const VcSpec& spec = cfg.vcs[vc];
    TrialResult r;
    r.scenario = cfg.name;
    r.config = DataPathName(cfg.data_path);
    r.cc = cc_name;
    r.flows = cfg.flows_per_vc;
    r.vc_id = vc;
    r.trial = trial;
    r.seed = out.seed;
    r.fct_s = ToSeconds(t.Fct());
    r.ideal_fct_s = IdealFct(cfg.file_bytes, static_cast<double>(spec.rate_bps),
                             cfg.mss, cfg.framing_bytes);
    const Efficiency eff = FctEfficiency(r.ideal_fct_s, r.fct_s);
    if (eff.clamped) {
      out.warnings.push_back("vc " + std::to_string(vc) +
                             ": FCT below the ideal, efficiency clamped to 1");
    }
    r.fct_efficiency = eff.value;
    r.retx_bytes = t.retx_bytes();
    r.overhead_pct = OverheadPct(r.retx_bytes, r.fct_s,
                                 static_cast<double>(spec.rate_bps));
    r.drops_policer = c.drops.policer;
    r.drops_queue = c.drops.queue;
    r.drops_microburst = c.drops.microburst;
    r.drops_forwarder = c.drops.forwarder;
    r.drops_shaper = c.drops.shaper;
    r.ce_marks = c.ce_marks;
    out.rows.push_back(std::move(r));
  }
  out.ok = errors.empty();
  for (size_t i = 0; i < errors.size(); ++i) {
    if (i) out.diagnostics += "; ";
    out.diagnostics += errors[i];
  }
  if (!out.ok) out.rows.clear();
  return out;
}

bool ExperimentResult::all_ok() const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const TrialOutcome& o) { return o.ok; });
}

ExperimentResult RunExperiment(const ScenarioConfig& cfg, int parallel) {
  ExperimentResult result;
  const auto trials = static_cast<int>(cfg.trials);
  result.outcomes.resize(cfg.trials);

  auto run_one = [&](int i) {
    const auto trial = static_cast<uint32_t>(i);
    try {
      result.outcomes[i] = RunTrial(cfg, trial);
    } catch (const std::exception& e) {
      TrialOutcome& o = result.outcomes[i];
      o.trial = trial;
      o.seed = TrialSeed(cfg.master_seed, trial);
      o.ok = false;
      o.diagnostics = e.what();
    }
  };

  if (parallel <= 1) {
    for (int i = 0; i < trials; ++i) run_one(i);
  } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(parallel)
    for (int i = 0; i < trials; ++i) run_one(i);
  }

  for (const TrialOutcome& o : result.outcomes) {
    result.rows.insert(result.rows.end(), o.rows.begin(), o.rows.end());
  }
  return result;
}

}  // namespace hpwan
