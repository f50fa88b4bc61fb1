#ifndef HPWAN_SIM_TIME_H_
#define HPWAN_SIM_TIME_H_

#include <cstdint>

namespace hpwan {

// Virtual time in integer nanoseconds since simulation start.
using SimTime = int64_t;

constexpr SimTime kNsPerUs = 1'000;
constexpr SimTime kNsPerMs = 1'000'000;
constexpr SimTime kNsPerSec = 1'000'000'000;
constexpr SimTime kInfiniteTime = INT64_MAX;

constexpr SimTime Microseconds(double us) { return static_cast<SimTime>(us * kNsPerUs); }
constexpr SimTime Milliseconds(double ms) { return static_cast<SimTime>(ms * kNsPerMs); }
constexpr SimTime Seconds(double s) { return static_cast<SimTime>(s * kNsPerSec); }
constexpr double ToSeconds(SimTime t) { return static_cast<double>(t) / kNsPerSec; }

}  // namespace hpwan

#endif  // HPWAN_SIM_TIME_H_
