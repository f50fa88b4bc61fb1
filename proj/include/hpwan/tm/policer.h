#ifndef HPWAN_TM_POLICER_H_
#define HPWAN_TM_POLICER_H_

#include <cstdint>

#include "hpwan/tm/token_bucket.h"

namespace hpwan {

constexpr uint64_t kDefaultCbsBytes = 262'144;

struct LeakyBucketProfile {
  uint64_t cir_bps = 0;
  uint64_t cbs_bytes = kDefaultCbsBytes;
};

enum class PoliceVerdict { kPass, kDrop };

// Hard ingress policer: non-conformant packets are dropped on arrival with
// no marking and no buffering.
class Policer {
 public:
  explicit Policer(const LeakyBucketProfile& profile, SimTime start = 0);

  PoliceVerdict Police(uint32_t wire_bytes, SimTime now);

  const LeakyBucketProfile& profile() const { return profile_; }
  double tokens_bytes() const { return bucket_.tokens_bytes(); }
  uint64_t drops() const { return drops_; }
  uint64_t passed_bytes() const { return passed_bytes_; }

 private:
  LeakyBucketProfile profile_;
  TokenBucket bucket_;
  uint64_t drops_ = 0;
  uint64_t passed_bytes_ = 0;
};

}  // namespace hpwan

#endif  // HPWAN_TM_POLICER_H_
