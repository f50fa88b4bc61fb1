#ifndef HPWAN_TRANSPORT_RANGE_SET_H_
#define HPWAN_TRANSPORT_RANGE_SET_H_

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <map>

namespace hpwan {

// Set of half-open byte ranges, stored as a contiguous prefix [0, prefix)
// plus disjoint out-of-order ranges beyond it.
class RangeSet {
 public:
  // Adds [start, end) and returns the number of bytes that were not yet
  // covered.
  uint64_t Add(uint64_t start, uint64_t end) {
    if (end <= prefix_ || start >= end) return 0;
    start = std::max(start, prefix_);
    if (start == prefix_ && (ranges_.empty() || ranges_.begin()->first > end)) {
      prefix_ = end;
      return end - start;
    }
    auto it = ranges_.upper_bound(start);
    if (it != ranges_.begin()) {
      auto prev = std::prev(it);
      if (prev->second >= start) it = prev;
    }
    uint64_t covered = 0;
    uint64_t lo = start;
    uint64_t hi = end;
    while (it != ranges_.end() && it->first <= end) {
      const uint64_t a = std::max(start, it->first);
      const uint64_t b = std::min(end, it->second);
      if (b > a) covered += b - a;
      lo = std::min(lo, it->first);
      hi = std::max(hi, it->second);
      it = ranges_.erase(it);
    }
    ranges_[lo] = hi;
    while (!ranges_.empty() && ranges_.begin()->first <= prefix_) {
      prefix_ = std::max(prefix_, ranges_.begin()->second);
      ranges_.erase(ranges_.begin());
    }
    return (end - start) - covered;
  }

  bool Covers(uint64_t start, uint64_t end) const {
    if (end <= prefix_) return true;
    auto it = ranges_.upper_bound(start);
    if (it == ranges_.begin()) return false;
    --it;
    return it->first <= start && it->second >= end;
  }

  // Length of the gap-free prefix starting at byte 0.
  uint64_t prefix() const { return prefix_; }
  size_t fragments() const { return ranges_.size(); }

 private:
  uint64_t prefix_ = 0;
  std::map<uint64_t, uint64_t> ranges_;
};

}  // namespace hpwan

#endif  // HPWAN_TRANSPORT_RANGE_SET_H_
