#include "hpwan/net/forwarder.h"

#include <algorithm>
#include <cmath>

namespace hpwan {

ForwarderParams ForwarderParams::LinuxDefaults() {
  ForwarderParams p;
  p.kind = ForwarderKind::kLinux;
  p.pps_capacity = 1.2e6;
  return p;
}

ForwarderParams ForwarderParams::DpdkDefaults() {
  ForwarderParams p;
  p.kind = ForwarderKind::kDpdk;
  p.pps_capacity = 0.0;
  return p;
}

SimTime ForwarderDelay(const ForwarderParams& params, RngStream& rng) {
  if (params.kind == ForwarderKind::kDpdk) {
    return std::llround(params.constant_delay_us * kNsPerUs);
  }
  const double us = std::min(rng.LogNormal(params.median_delay_us, params.sigma),
                             params.max_delay_us);
  return std::llround(us * kNsPerUs);
}

Forwarder::Forwarder(const ForwarderParams& params) : params_(params) {
  if (params_.pps_capacity > 0) {
    service_ns_ = std::llround(kNsPerSec / params_.pps_capacity);
  }
}

bool Forwarder::IsPureDelay() const {
  return params_.kind == ForwarderKind::kDpdk && params_.pps_capacity <= 0;
}

SimTime Forwarder::pure_delay() const {
  return std::llround(params_.constant_delay_us * kNsPerUs);
}

std::optional<SimTime> Forwarder::Admit(SimTime now, RngStream& rng) {
  while (!in_system_.empty() && in_system_.front() <= now) {
    in_system_.pop_front();
  }
  if (in_system_.size() >= params_.ring_slots) {
    ++drops_;
    return std::nullopt;
  }
  const SimTime out =
      std::max(now + ForwarderDelay(params_, rng), last_out_ + service_ns_);
  last_out_ = out;
  in_system_.push_back(out);
  return out;
}

}  // namespace hpwan
