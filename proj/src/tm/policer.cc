#include "hpwan/tm/policer.h"

#include <stdexcept>

namespace hpwan {

Policer::Policer(const LeakyBucketProfile& profile, SimTime start)
    : profile_(profile), bucket_(profile.cir_bps, profile.cbs_bytes, start) {}

PoliceVerdict Policer::Police(uint32_t wire_bytes, SimTime now) {
  if (bucket_.TryConsume(wire_bytes, now)) {
    passed_bytes_ += wire_bytes;
    return PoliceVerdict::kPass;
  }
  ++drops_;
  return PoliceVerdict::kDrop;
}

}  // namespace hpwan
