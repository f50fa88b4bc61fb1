#ifndef HPWAN_TRANSPORT_TRANSFER_H_
#define HPWAN_TRANSPORT_TRANSFER_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "hpwan/cc/congestion_control.h"
#include "hpwan/net/network.h"
#include "hpwan/net/packet.h"
#include "hpwan/sim/simulator.h"
#include "hpwan/transport/range_set.h"
#include "hpwan/transport/rate_sample.h"

namespace hpwan {

struct TransportConfig {
  uint32_t mss = kDefaultMss;
  uint32_t framing_bytes = kDefaultFramingBytes;
  // Segments covered by one ACK. 1 acknowledges every segment.
  uint32_t ack_decimation = 1;
  // Longest a partial ACK batch waits before it is sent anyway.
  SimTime delayed_ack_timeout = Microseconds(200);
  uint32_t dupthresh = 3;
  SimTime rto_min = Milliseconds(200);
  SimTime rto_initial = Seconds(1);
  // One-way delay of the (lossless, jitter-free) ACK path.
  SimTime ack_delay = 0;
};

struct FlowStats {
  uint64_t claimed_bytes = 0;    // bytes this flow pulled from the pool
  uint64_t sent_bytes = 0;       // payload bytes transmitted, incl. retx
  uint64_t retx_bytes = 0;       // retransmitted payload bytes
  uint64_t delivered_bytes = 0;  // SACKed payload bytes
  uint64_t lost_bytes = 0;       // bytes declared lost by the sender
  uint64_t rto_count = 0;
  // Receiver time of the last delivery that added new bytes.
  SimTime last_new_delivery = -1;
};

// One file moved over one VC by N parallel flows that pull segments from a
// shared byte pool, so every flow keeps sending until the whole file is out.
// The receiver keeps exact knowledge of received ranges (perfect SACK).
class Transfer : public EventTarget, public PacketSink {
 public:
  // Snapshot handed to an observer after every processed ACK.
  struct AckView {
    uint32_t flow;
    SimTime now;
    const CongestionControl& cc;
    const RateSample& rs;
  };
  using AckObserver = std::function<void(const AckView&)>;
  // Snapshot taken right after a segment is handed to the network.
  struct SendView {
    uint32_t flow;
    SimTime now;
    uint64_t inflight;  // including this segment
    uint64_t cwnd;
    uint32_t len;
    bool is_retx;
  };
  using SendObserver = std::function<void(const SendView&)>;
  using CcFactory = std::function<std::unique_ptr<CongestionControl>(
      uint32_t flow, RngStream* rng)>;

  Transfer(Simulator* sim, Network* net, PacketPool* pool, uint32_t vc,
           uint64_t total_bytes, uint32_t num_flows, CcKind cc,
           const CcParams& cc_params, const TransportConfig& config);
  Transfer(Simulator* sim, Network* net, PacketPool* pool, uint32_t vc,
           uint64_t total_bytes, uint32_t num_flows, const CcFactory& make_cc,
           const TransportConfig& config);
  ~Transfer() override;

  // Schedules the first send opportunity of every flow at `at`.
  void Start(SimTime at);

  void OnEvent(const Event& event) override;
  void OnPacketDelivered(PacketHandle handle, SimTime now) override;

  bool complete() const { return complete_; }
  // Time from Start to delivery of the last missing byte. Throws
  // std::logic_error if the transfer has not completed.
  SimTime Fct() const;
  SimTime start_time() const { return start_time_; }
  SimTime end_time() const { return end_time_; }
  // Goodput from the moment half of the file had arrived in order until
  // completion; startup transients are excluded. 0 if not complete.
  double SecondHalfGoodputBps() const;

  uint32_t vc() const { return vc_; }
  uint64_t total_bytes() const { return total_bytes_; }
  uint64_t pool_remaining() const { return total_bytes_ - pool_next_; }
  uint32_t num_flows() const { return static_cast<uint32_t>(flows_.size()); }
  const FlowStats& flow_stats(uint32_t flow) const;
  const CongestionControl& flow_cc(uint32_t flow) const;
  uint64_t flow_inflight(uint32_t flow) const;
  SimTime flow_srtt(uint32_t flow) const;
  uint64_t retx_bytes() const;
  const RangeSet& received() const { return received_; }

  void set_ack_observer(AckObserver observer) {
    ack_observer_ = std::move(observer);
  }
  void set_send_observer(SendObserver observer) {
    send_observer_ = std::move(observer);
  }
  // Called once when the last byte arrives.
  void set_completion_callback(std::function<void(Transfer&)> callback) {
    on_complete_ = std::move(callback);
  }

 private:
  struct Flow;
  struct AckRecord {
    uint32_t flow;
    bool ce;
    uint64_t tx_index;
  };
  enum EventKind : uint32_t { kSend, kRto, kAck, kDelayedAck };

  void TrySend(Flow& f, SimTime now);
  void Emit(Flow& f, uint64_t seq_start, uint32_t len, bool is_retx,
            SimTime now);
  void ArmSendTimer(Flow& f, SimTime at);
  void ArmRto(Flow& f, SimTime now);
  void OnRtoTimer(Flow& f, SimTime now);
  void ProcessAck(const AckRecord& ack, SimTime now);
  void DetectLosses(Flow& f, uint64_t tx_index, SimTime now,
                    uint64_t* newly_lost);
  void MarkLost(Flow& f, uint64_t tx_index, SimTime now);
  void PopResolved(Flow& f);
  void UpdateRtt(Flow& f, SimTime rtt);
  void FlushAcks(SimTime now);

  Simulator* sim_;
  Network* net_;
  PacketPool* pool_;
  uint32_t vc_;
  uint64_t total_bytes_;
  TransportConfig config_;
  uint32_t target_id_;

  std::vector<std::unique_ptr<Flow>> flows_;
  uint64_t pool_next_ = 0;
  uint64_t next_packet_id_ = 0;

  RangeSet received_;
  std::deque<AckRecord> acks_in_flight_;
  uint32_t unsent_acks_ = 0;
  uint64_t ack_generation_ = 0;

  bool started_ = false;
  bool complete_ = false;
  SimTime start_time_ = 0;
  SimTime end_time_ = 0;
  SimTime half_time_ = -1;
  uint64_t half_bytes_ = 0;
  AckObserver ack_observer_;
  SendObserver send_observer_;
  std::function<void(Transfer&)> on_complete_;
};

}  // namespace hpwan

#endif  // HPWAN_TRANSPORT_TRANSFER_H_
