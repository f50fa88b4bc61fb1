#ifndef HPWAN_SIM_SIMULATOR_H_
#define HPWAN_SIM_SIMULATOR_H_

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hpwan/sim/rng.h"
#include "hpwan/sim/time.h"

namespace hpwan {

struct Event {
  SimTime time;
  uint64_t seq;     // assigned at scheduling time; breaks ties in FIFO order
  uint32_t target;  // component id returned by Simulator::Register
  uint32_t kind;    // component-defined descriptor
  uint64_t arg;     // component-defined payload (usually a pool index)
};

class EventTarget {
 public:
  virtual ~EventTarget() = default;
  virtual void OnEvent(const Event& event) = 0;
};

struct EventHandle {
  uint64_t seq = 0;
  bool valid() const { return seq != 0; }
};

struct RunStats {
  uint64_t events_executed = 0;
  SimTime final_time = 0;
  bool stopped_by_request = false;

  bool operator==(const RunStats&) const = default;
};

class RunawayError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Single-threaded discrete-event engine. Events execute in (time, seq) order,
// so the trace is a deterministic function of the scenario and master seed.
class Simulator {
 public:
  static constexpr uint64_t kDefaultEventCap = 5'000'000'000ULL;

  explicit Simulator(uint64_t master_seed,
                     uint64_t event_cap = kDefaultEventCap);
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  uint32_t Register(EventTarget* target);

  // Scheduling before Now() is a programming error and throws std::logic_error.
  EventHandle Schedule(SimTime time, uint32_t target, uint32_t kind,
                       uint64_t arg = 0);
  // Returns false if the event already fired or was cancelled. Linear in the
  // number of pending events; cancellation is rare in this simulator.
  bool Cancel(EventHandle handle);

  // Runs events with time <= stop (inclusive) until the queue drains, the
  // stop time is passed, or RequestStop() is called from a handler.
  RunStats RunUntil(SimTime stop = kInfiniteTime);
  void RequestStop() { stop_requested_ = true; }

  SimTime Now() const { return now_; }
  size_t pending() const { return heap_.size() - tombstones_; }
  uint64_t master_seed() const { return master_seed_; }
  uint64_t events_executed() const { return events_executed_; }

  // Stream keyed by hash(master seed, label). Repeated calls with the same
  // label return the same stream object.
  RngStream& Rng(std::string_view label);

 private:
  static bool Earlier(const Event& a, const Event& b) {
    return a.time < b.time || (a.time == b.time && a.seq < b.seq);
  }
  void Push(const Event& e);
  Event Pop();

  uint64_t master_seed_;
  uint64_t event_cap_;
  SimTime now_ = 0;
  uint64_t next_seq_ = 1;
  uint64_t events_executed_ = 0;
  bool stop_requested_ = false;
  std::vector<Event> heap_;  // 4-ary min-heap
  size_t tombstones_ = 0;
  std::vector<EventTarget*> targets_;
  std::map<std::string, std::unique_ptr<RngStream>, std::less<>> streams_;
};

}  // namespace hpwan

#endif  // HPWAN_SIM_SIMULATOR_H_
