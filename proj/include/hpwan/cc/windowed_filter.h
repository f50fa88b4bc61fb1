#ifndef HPWAN_CC_WINDOWED_FILTER_H_
#define HPWAN_CC_WINDOWED_FILTER_H_

#include <array>
#include <cstdint>

namespace hpwan {

// Running maximum over a sliding window of "time" (any monotone counter,
// e.g. round trips). Keeps the best, second-best and third-best samples as
// in Kathleen Nichols' algorithm, so updates are O(1).
template <typename T>
class WindowedMaxFilter {
 public:
  explicit WindowedMaxFilter(int64_t window) : window_(window) {}

  void Reset(T value, int64_t time) {
    for (auto& s : s_) s = {time, value};
  }

  T Update(T value, int64_t time) {
    const Sample sample{time, value};
    if (!primed_ || value >= s_[0].value || time - s_[2].time > window_) {
      primed_ = true;
      Reset(value, time);
      return s_[0].value;
    }
    if (value >= s_[1].value) {
      s_[2] = s_[1] = sample;
    } else if (value >= s_[2].value) {
      s_[2] = sample;
    }
    return Subwindow(sample);
  }

  T Best() const { return primed_ ? s_[0].value : T{}; }

 private:
  struct Sample {
    int64_t time = 0;
    T value{};
  };

  // Ages out the best sample once it leaves the window and promotes the
  // backups; also refreshes backups that are stale relative to subwindows.
  T Subwindow(const Sample& sample) {
    const int64_t dt = sample.time - s_[0].time;
    if (dt > window_) {
      s_[0] = s_[1];
      s_[1] = s_[2];
      s_[2] = sample;
      if (sample.time - s_[0].time > window_) {
        s_[0] = s_[1];
        s_[1] = s_[2];
        s_[2] = sample;
      }
    } else if (s_[1].time == s_[0].time && dt > window_ / 4) {
      s_[2] = s_[1] = sample;
    } else if (s_[2].time == s_[1].time && dt > window_ / 2) {
      s_[2] = sample;
    }
    return s_[0].value;
  }

  int64_t window_;
  bool primed_ = false;
  std::array<Sample, 3> s_{};
};

}  // namespace hpwan

#endif  // HPWAN_CC_WINDOWED_FILTER_H_
