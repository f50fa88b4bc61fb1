#include "hpwan/sim/simulator.h"

#include <string>
#include <utility>

namespace hpwan {

namespace {

constexpr uint32_t kTombstone = UINT32_MAX;
constexpr size_t kArity = 4;

}  // namespace

Simulator::Simulator(uint64_t master_seed, uint64_t event_cap)
    : master_seed_(master_seed), event_cap_(event_cap) {
  heap_.reserve(1 << 16);
}

uint32_t Simulator::Register(EventTarget* target) {
  targets_.push_back(target);
  return static_cast<uint32_t>(targets_.size() - 1);
}

EventHandle Simulator::Schedule(SimTime time, uint32_t target, uint32_t kind,
                                uint64_t arg) {
  if (time < now_) {
    throw std::logic_error("event scheduled in the past: t=" +
                           std::to_string(time) +
                           " now=" + std::to_string(now_));
  }
  const uint64_t seq = next_seq_++;
  Push(Event{time, seq, target, kind, arg});
  return EventHandle{seq};
}

bool Simulator::Cancel(EventHandle handle) {
  if (!handle.valid()) return false;
  for (Event& e : heap_) {
    if (e.seq == handle.seq) {
      if (e.target == kTombstone) return false;
      e.target = kTombstone;
      ++tombstones_;
      return true;
    }
  }
  return false;
}

void Simulator::Push(const Event& e) {
  size_t i = heap_.size();
  heap_.push_back(e);
  while (i > 0) {
    const size_t parent = (i - 1) / kArity;
    if (!Earlier(e, heap_[parent])) break;
    heap_[i] = heap_[parent];
    i = parent;
  }
  heap_[i] = e;
}

Event Simulator::Pop() {
  const Event top = heap_.front();
  const Event last = heap_.back();
  heap_.pop_back();
  const size_t n = heap_.size();
  if (n == 0) return top;
  size_t i = 0;
  while (true) {
    const size_t first = i * kArity + 1;
    if (first >= n) break;
    size_t best = first;
    const size_t end = first + kArity < n ? first + kArity : n;
    for (size_t c = first + 1; c < end; ++c) {
      if (Earlier(heap_[c], heap_[best])) best = c;
    }
    if (!Earlier(heap_[best], last)) break;
    heap_[i] = heap_[best];
    i = best;
  }
  heap_[i] = last;
  return top;
}

RunStats Simulator::RunUntil(SimTime stop) {
  stop_requested_ = false;
  while (!heap_.empty() && !stop_requested_) {
    if (heap_.front().time > stop) break;
    const Event e = Pop();
    if (e.target == kTombstone) {
      --tombstones_;
      continue;
    }
    now_ = e.time;
    if (++events_executed_ > event_cap_) {
      throw RunawayError("event cap of " + std::to_string(event_cap_) +
                         " exceeded at t=" + std::to_string(now_) +
                         "ns; pending=" + std::to_string(heap_.size()));
    }
    targets_[e.target]->OnEvent(e);
  }
  if (!stop_requested_ && stop != kInfiniteTime && stop > now_) now_ = stop;
  return RunStats{events_executed_, now_, stop_requested_};
}

RngStream& Simulator::Rng(std::string_view label) {
  auto it = streams_.find(label);
  if (it != streams_.end()) return *it->second;
  auto stream = std::make_unique<RngStream>(std::string(label),
                                            DeriveSeed(master_seed_, label));
  RngStream& ref = *stream;
  streams_.emplace(std::string(label), std::move(stream));
  return ref;
}

}  // namespace hpwan
