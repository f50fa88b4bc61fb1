#include "hpwan/cc/congestion_control.h"

#include <stdexcept>
#include <string>

#include "hpwan/cc/bbr1.h"
#include "hpwan/cc/bbr3.h"
#include "hpwan/cc/cubic.h"

namespace hpwan {

std::string_view CcName(CcKind kind) {
  switch (kind) {
    case CcKind::kCubic:
      return "cubic";
    case CcKind::kBbr1:
      return "bbr1";
    case CcKind::kBbr3:
      return "bbr3";
  }
  return "unknown";
}

CcKind ParseCcKind(std::string_view name) {
  if (name == "cubic") return CcKind::kCubic;
  if (name == "bbr1") return CcKind::kBbr1;
  if (name == "bbr3") return CcKind::kBbr3;
  throw std::invalid_argument("unknown congestion control '" +
                              std::string(name) +
                              "' (expected cubic, bbr1 or bbr3)");
}

std::unique_ptr<CongestionControl> MakeCongestionControl(
    CcKind kind, const CcParams& params, uint32_t mss, RngStream* rng) {
  switch (kind) {
    case CcKind::kCubic:
      return std::make_unique<Cubic>(params.cubic, mss);
    case CcKind::kBbr1:
      return std::make_unique<Bbr1>(params.bbr1, mss, rng);
    case CcKind::kBbr3:
      return std::make_unique<Bbr3>(params.bbr3, mss, rng);
  }
  throw std::invalid_argument("unknown congestion control kind");
}

}  // namespace hpwan
