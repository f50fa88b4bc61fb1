#include "hpwan/sim/rng.h"

#include <cmath>
#include <numbers>
#include <utility>

namespace hpwan {

namespace {

inline uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t DeriveSeed(uint64_t master_seed, std::string_view label) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return Mix64(Mix64(master_seed) ^ h);
}

RngStream::RngStream(std::string label, uint64_t seed)
    : label_(std::move(label)), seed_(seed) {
  uint64_t x = seed;
  for (auto& word : s_) {
    x = Mix64(x);
    word = x;
  }
}

uint64_t RngStream::NextU64() {
  const uint64_t result = Rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

double RngStream::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double RngStream::UniformOpenZero() { return 1.0 - Uniform(); }

double RngStream::Normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double r = std::sqrt(-2.0 * std::log(UniformOpenZero()));
  const double theta = 2.0 * std::numbers::pi * Uniform();
  spare_normal_ = r * std::sin(theta);
  has_spare_normal_ = true;
  return r * std::cos(theta);
}

double RngStream::Exponential(double mean) {
  return -mean * std::log(UniformOpenZero());
}

double RngStream::LogNormal(double median, double sigma) {
  if (sigma == 0.0) return median;
  return median * std::exp(sigma * Normal());
}

uint64_t RngStream::UniformInt(uint64_t n) {
  // Lemire's multiply-shift; the bias is below 2^-64 * n and irrelevant here.
  return static_cast<uint64_t>(
      (static_cast<unsigned __int128>(NextU64()) * n) >> 64);
}

}  // namespace hpwan
