#include "hpwan/net/microburst.h"

#include <algorithm>
#include <cmath>

namespace hpwan {

MicroburstLossModel::MicroburstLossModel(const MicroburstParams& params,
                                         RngStream* rng)
    : params_(params),
      rng_(rng),
      drain_bytes_per_ns_(static_cast<double>(params.line_rate_bps) / 8e9) {
  if (params_.enabled && params_.burst_rate_per_s > 0) {
    next_burst_ = static_cast<SimTime>(NextGapNs());
  }
}

double MicroburstLossModel::NextGapNs() {
  return std::ceil(rng_->Exponential(1e9 / params_.burst_rate_per_s));
}

void MicroburstLossModel::Advance(SimTime now) {
  while (next_burst_ <= now) {
    const double dt = static_cast<double>(next_burst_ - residue_time_);
    residue_bytes_ = std::max(0.0, residue_bytes_ - dt * drain_bytes_per_ns_);
    residue_bytes_ += rng_->Exponential(params_.mean_burst_bytes);
    residue_time_ = next_burst_;
    ++bursts_;
    const double gap = NextGapNs();
    next_burst_ = gap >= static_cast<double>(kInfiniteTime - next_burst_)
                      ? kInfiniteTime
                      : next_burst_ + static_cast<SimTime>(gap);
  }
  if (now > residue_time_) {
    const double dt = static_cast<double>(now - residue_time_);
    residue_bytes_ = std::max(0.0, residue_bytes_ - dt * drain_bytes_per_ns_);
    residue_time_ = now;
  }
}

double MicroburstLossModel::ResidueAt(SimTime now) {
  if (!params_.enabled) return 0.0;
  Advance(now);
  return residue_bytes_;
}

MicroburstVerdict MicroburstLossModel::Step(uint32_t wire_bytes, SimTime now,
                                            uint64_t vc_backlog_bytes) {
  if (!params_.enabled) return MicroburstVerdict::kPass;
  Advance(now);
  const double needed = residue_bytes_ + static_cast<double>(vc_backlog_bytes) +
                        static_cast<double>(wire_bytes);
  if (needed > static_cast<double>(params_.shallow_buffer_bytes)) {
    ++drops_;
    return MicroburstVerdict::kDropped;
  }
  return MicroburstVerdict::kPass;
}

}  // namespace hpwan
