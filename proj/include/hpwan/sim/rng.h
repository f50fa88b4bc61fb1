#ifndef HPWAN_SIM_RNG_H_
#define HPWAN_SIM_RNG_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace hpwan {

// 64-bit mixing function (splitmix64 finalizer).
uint64_t Mix64(uint64_t x);

// FNV-1a over the label bytes, folded with the master seed through Mix64.
uint64_t DeriveSeed(uint64_t master_seed, std::string_view label);

// xoshiro256** generator with portable, hand-written distributions so that
// sequences are identical across standard libraries and platforms.
class RngStream {
 public:
  RngStream(std::string label, uint64_t seed);

  const std::string& label() const { return label_; }
  uint64_t seed() const { return seed_; }

  uint64_t NextU64();
  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform();
  // Uniform in (0, 1], safe for log().
  double UniformOpenZero();
  double Normal();
  double Exponential(double mean);
  // Lognormal parameterized by its median and the sigma of the underlying
  // normal.
  double LogNormal(double median, double sigma);
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform integer in [0, n).
  uint64_t UniformInt(uint64_t n);

 private:
  std::string label_;
  uint64_t seed_;
  std::array<uint64_t, 4> s_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace hpwan

#endif  // HPWAN_SIM_RNG_H_
