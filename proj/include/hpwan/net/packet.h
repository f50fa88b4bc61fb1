#ifndef HPWAN_NET_PACKET_H_
#define HPWAN_NET_PACKET_H_

#include <cstdint>
#include <vector>

#include "hpwan/sim/time.h"

namespace hpwan {

enum class Ecn : uint8_t { kNotEct, kEct0, kCe };
enum class Direction : uint8_t { kData, kAck };

// Jumbo-frame defaults: 9000-byte MTU minus 40 bytes of TCP/IP headers, plus
// 78 bytes of headers, Ethernet framing, preamble and inter-frame gap on the
// wire.
constexpr uint32_t kDefaultMss = 8960;
constexpr uint32_t kDefaultFramingBytes = 78;

struct Packet {
  uint64_t id = 0;
  uint32_t flow_id = 0;  // index of the flow within its transfer
  uint32_t vc_id = 0;
  // Byte range within the transfer's byte space.
  uint64_t seq_start = 0;
  uint64_t seq_end = 0;
  uint32_t wire_bytes = 0;
  uint32_t payload_bytes = 0;
  Ecn ecn = Ecn::kNotEct;
  bool is_retx = false;
  Direction direction = Direction::kData;
  uint16_t hop = 0;       // position along the VC path
  uint64_t tx_index = 0;  // per-flow transmission counter
  SimTime sent_at = 0;
};

using PacketHandle = uint32_t;

// Slab of packets addressed by handle; handles are recycled on release.
class PacketPool {
 public:
  PacketHandle Allocate() {
    if (!free_.empty()) {
      const PacketHandle h = free_.back();
      free_.pop_back();
      slots_[h] = Packet{};
      return h;
    }
    slots_.emplace_back();
    return static_cast<PacketHandle>(slots_.size() - 1);
  }
  void Release(PacketHandle h) { free_.push_back(h); }
  Packet& operator[](PacketHandle h) { return slots_[h]; }
  const Packet& operator[](PacketHandle h) const { return slots_[h]; }
  size_t live() const { return slots_.size() - free_.size(); }

 private:
  std::vector<Packet> slots_;
  std::vector<PacketHandle> free_;
};

}  // namespace hpwan

#endif  // HPWAN_NET_PACKET_H_
