#include "hpwan/transport/transfer.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hpwan {

namespace {

enum class TxState : uint8_t { kInFlight, kSacked, kLost };

// One transmission of a segment. Retransmissions are new records.
struct TxRecord {
  uint64_t seq_start;
  uint32_t len;
  TxState state;
  bool is_retx;
  bool app_limited;
  bool resent;  // lost and already retransmitted
  SimTime sent_at;
  // Delivery-rate snapshot taken at send time.
  uint64_t delivered;
  SimTime delivered_time;
  SimTime first_sent_time;
  uint64_t lost;
  uint64_t tx_in_flight;
};

constexpr uint32_t kMaxBackoffShift = 6;

}  // namespace

struct Transfer::Flow {
  uint32_t id = 0;
  std::unique_ptr<CongestionControl> cc;
  FlowStats stats;

  std::deque<TxRecord> tx;
  uint64_t tx_base = 0;  // tx index of tx.front()
  uint64_t next_tx = 0;
  std::deque<uint64_t> retx_queue;  // tx indices of lost records

  uint64_t inflight = 0;
  uint64_t delivered = 0;
  SimTime delivered_time = 0;
  SimTime first_sent_time = 0;
  uint64_t lost_total = 0;
  uint64_t app_limited_until = 0;

  // Three highest SACKed tx indices, descending; a record below the third
  // has been passed by at least dupthresh later deliveries.
  std::array<uint64_t, 3> top_sacked{};
  uint32_t sacked_seen = 0;
  uint64_t loss_scan = 0;

  SimTime srtt = 0;
  SimTime rttvar = 0;
  SimTime min_rtt = 0;
  SimTime rto = 0;
  uint32_t backoff_shift = 0;

  double next_send = 0.0;  // pacing release time, fractional ns
  bool send_timer_pending = false;
  SimTime send_timer_at = 0;
  bool rto_pending = false;

  TxRecord& Record(uint64_t index) { return tx[index - tx_base]; }
  bool Tracked(uint64_t index) const {
    return index >= tx_base && index < next_tx;
  }
};

Transfer::Transfer(Simulator* sim, Network* net, PacketPool* pool, uint32_t vc,
                   uint64_t total_bytes, uint32_t num_flows, CcKind cc,
                   const CcParams& cc_params, const TransportConfig& config)
    : Transfer(sim, net, pool, vc, total_bytes, num_flows,
               [cc, cc_params, mss = config.mss](uint32_t, RngStream* rng) {
                 return MakeCongestionControl(cc, cc_params, mss, rng);
               },
               config) {}

Transfer::Transfer(Simulator* sim, Network* net, PacketPool* pool, uint32_t vc,
                   uint64_t total_bytes, uint32_t num_flows,
                   const CcFactory& make_cc, const TransportConfig& config)
    : sim_(sim),
      net_(net),
      pool_(pool),
      vc_(vc),
      total_bytes_(total_bytes),
      config_(config) {
  if (num_flows == 0) throw std::invalid_argument("a transfer needs >= 1 flow");
  if (config_.mss == 0) throw std::invalid_argument("mss must be positive");
  if (config_.ack_decimation == 0) {
    throw std::invalid_argument("ack_decimation must be >= 1");
  }
  if (config_.dupthresh == 0 || config_.dupthresh > 3) {
    throw std::invalid_argument("dupthresh must be in [1, 3]");
  }
  target_id_ = sim_->Register(this);
  for (uint32_t i = 0; i < num_flows; ++i) {
    auto f = std::make_unique<Flow>();
    f->id = i;
    RngStream& rng = sim_->Rng("cc.vc" + std::to_string(vc) + ".flow" +
                               std::to_string(i));
    f->cc = make_cc(i, &rng);
    f->rto = config_.rto_initial;
    flows_.push_back(std::move(f));
  }
}

Transfer::~Transfer() = default;

const FlowStats& Transfer::flow_stats(uint32_t flow) const {
  return flows_.at(flow)->stats;
}

const CongestionControl& Transfer::flow_cc(uint32_t flow) const {
  return *flows_.at(flow)->cc;
}

uint64_t Transfer::flow_inflight(uint32_t flow) const {
  return flows_.at(flow)->inflight;
}

SimTime Transfer::flow_srtt(uint32_t flow) const {
  return flows_.at(flow)->srtt;
}

double Transfer::SecondHalfGoodputBps() const {
  if (!complete_ || end_time_ <= half_time_) return 0.0;
  return static_cast<double>(total_bytes_ - half_bytes_) * 8.0 /
         ToSeconds(end_time_ - half_time_);
}

uint64_t Transfer::retx_bytes() const {
  uint64_t total = 0;
  for (const auto& f : flows_) total += f->stats.retx_bytes;
  return total;
}

SimTime Transfer::Fct() const {
  if (!complete_) throw std::logic_error("transfer has not completed");
  return end_time_ - start_time_;
}

void Transfer::Start(SimTime at) {
  if (started_) throw std::logic_error("transfer already started");
  started_ = true;
  start_time_ = at;
  if (total_bytes_ == 0) {
    complete_ = true;
    end_time_ = at;
    if (on_complete_) on_complete_(*this);
    return;
  }
  for (auto& f : flows_) {
    f->next_send = static_cast<double>(at);
    ArmSendTimer(*f, at);
  }
}

void Transfer::ArmSendTimer(Flow& f, SimTime at) {
  if (f.send_timer_pending && f.send_timer_at <= at) return;
  f.send_timer_pending = true;
  f.send_timer_at = at;
  sim_->Schedule(at, target_id_, kSend, f.id);
}

void Transfer::ArmRto(Flow& f, SimTime now) {
  if (f.rto_pending) return;
  f.rto_pending = true;
  sim_->Schedule(now + (f.rto << f.backoff_shift), target_id_, kRto, f.id);
}

void Transfer::TrySend(Flow& f, SimTime now) {
  while (!complete_) {
    if (f.inflight >= f.cc->cwnd_bytes()) return;
    const SimTime release = static_cast<SimTime>(std::ceil(f.next_send));
    if (now < release) {
      ArmSendTimer(f, release);
      return;
    }
    uint64_t seq_start = 0;
    uint32_t len = 0;
    bool is_retx = false;
    while (!f.retx_queue.empty()) {
      const uint64_t index = f.retx_queue.front();
      f.retx_queue.pop_front();
      if (!f.Tracked(index)) continue;
      TxRecord& r = f.Record(index);
      if (r.state != TxState::kLost || r.resent) continue;
      r.resent = true;
      seq_start = r.seq_start;
      len = r.len;
      is_retx = true;
      break;
    }
    if (!is_retx) {
      if (pool_next_ == total_bytes_) {
        // Nothing left to send: samples taken from here on are app-limited.
        f.app_limited_until = std::max<uint64_t>(f.delivered + f.inflight, 1);
        PopResolved(f);
        return;
      }
      seq_start = pool_next_;
      len = static_cast<uint32_t>(
          std::min<uint64_t>(config_.mss, total_bytes_ - pool_next_));
      pool_next_ += len;
      f.stats.claimed_bytes += len;
    }
    Emit(f, seq_start, len, is_retx, now);
    PopResolved(f);
    const double rate = f.cc->pacing_rate_bps();
    // A send at the rounded-up release time keeps the exact schedule, so
    // the ns rounding does not accumulate.
    const double base = static_cast<double>(now) - f.next_send < 1.0
                            ? f.next_send
                            : static_cast<double>(now);
    if (std::isfinite(rate) && rate > 0) {
      f.next_send = base + (len + config_.framing_bytes) * 8.0 * 1e9 / rate;
    } else {
      f.next_send = base;
    }
  }
}

void Transfer::Emit(Flow& f, uint64_t seq_start, uint32_t len, bool is_retx,
                    SimTime now) {
  if (f.inflight == 0) {
    f.first_sent_time = now;
    f.delivered_time = now;
  }
  const PacketHandle h = pool_->Allocate();
  Packet& p = (*pool_)[h];
  p.id = next_packet_id_++;
  p.flow_id = f.id;
  p.vc_id = vc_;
  p.seq_start = seq_start;
  p.seq_end = seq_start + len;
  p.payload_bytes = len;
  p.wire_bytes = len + config_.framing_bytes;
  p.ecn = Ecn::kEct0;
  p.is_retx = is_retx;
  p.direction = Direction::kData;
  p.tx_index = f.next_tx;
  p.sent_at = now;

  f.inflight += len;
  f.tx.push_back(TxRecord{seq_start, len, TxState::kInFlight, is_retx,
                          f.app_limited_until != 0, false, now, f.delivered,
                          f.delivered_time, f.first_sent_time, f.lost_total,
                          f.inflight});
  ++f.next_tx;
  f.stats.sent_bytes += len;
  if (is_retx) f.stats.retx_bytes += len;
  ArmRto(f, now);
  if (send_observer_) {
    send_observer_(SendView{f.id, now, f.inflight, f.cc->cwnd_bytes(), len,
                            is_retx});
  }
  net_->Inject(h, now);
}

void Transfer::PopResolved(Flow& f) {
  while (!f.tx.empty()) {
    const TxRecord& r = f.tx.front();
    const bool done = r.state == TxState::kSacked ||
                      (r.state == TxState::kLost && r.resent);
    if (!done) break;
    f.tx.pop_front();
    ++f.tx_base;
  }
}

void Transfer::OnPacketDelivered(PacketHandle handle, SimTime now) {
  const Packet& p = (*pool_)[handle];
  const uint32_t flow = p.flow_id;
  const AckRecord ack{flow, p.ecn == Ecn::kCe, p.tx_index};
  const uint64_t added = received_.Add(p.seq_start, p.seq_end);
  pool_->Release(handle);
  if (added > 0) flows_[flow]->stats.last_new_delivery = now;
  if (half_time_ < 0 && received_.prefix() * 2 >= total_bytes_) {
    half_time_ = now;
    half_bytes_ = received_.prefix();
  }
  if (!complete_ && received_.prefix() == total_bytes_) {
    complete_ = true;
    end_time_ = now;
    if (on_complete_) on_complete_(*this);
  }
  acks_in_flight_.push_back(ack);
  ++unsent_acks_;
  if (unsent_acks_ >= config_.ack_decimation || complete_) {
    FlushAcks(now);
  } else if (unsent_acks_ == 1) {
    sim_->Schedule(now + config_.delayed_ack_timeout, target_id_, kDelayedAck,
                   ack_generation_);
  }
}

void Transfer::FlushAcks(SimTime now) {
  if (unsent_acks_ == 0) return;
  sim_->Schedule(now + config_.ack_delay, target_id_, kAck, unsent_acks_);
  unsent_acks_ = 0;
  ++ack_generation_;
}

void Transfer::OnEvent(const Event& event) {
  const SimTime now = event.time;
  switch (event.kind) {
    case kSend: {
      Flow& f = *flows_[event.arg];
      if (f.send_timer_pending && now >= f.send_timer_at) {
        f.send_timer_pending = false;
      }
      TrySend(f, now);
      break;
    }
    case kRto:
      OnRtoTimer(*flows_[event.arg], now);
      break;
    case kAck:
      for (uint64_t i = 0; i < event.arg; ++i) {
        const AckRecord ack = acks_in_flight_.front();
        acks_in_flight_.pop_front();
        ProcessAck(ack, now);
      }
      break;
    case kDelayedAck:
      if (event.arg == ack_generation_) FlushAcks(now);
      break;
    default:
      throw std::logic_error("unknown transfer event kind");
  }
}

void Transfer::UpdateRtt(Flow& f, SimTime rtt) {
  if (f.srtt == 0) {
    f.srtt = rtt;
    f.rttvar = rtt / 2;
  } else {
    const SimTime err = f.srtt > rtt ? f.srtt - rtt : rtt - f.srtt;
    f.rttvar = (3 * f.rttvar + err) / 4;
    f.srtt = (7 * f.srtt + rtt) / 8;
  }
  if (f.min_rtt == 0 || rtt < f.min_rtt) f.min_rtt = rtt;
  f.rto = std::max(f.srtt + 4 * f.rttvar, config_.rto_min);
  f.backoff_shift = 0;
}

void Transfer::MarkLost(Flow& f, uint64_t tx_index, SimTime now) {
  TxRecord& r = f.Record(tx_index);
  r.state = TxState::kLost;
  f.inflight -= r.len;
  f.lost_total += r.len;
  f.stats.lost_bytes += r.len;
  f.retx_queue.push_back(tx_index);
  f.cc->OnLoss(r.len, r.sent_at, now);
}

void Transfer::DetectLosses(Flow& f, uint64_t tx_index, SimTime now,
                            uint64_t* newly_lost) {
  auto& top = f.top_sacked;
  const uint32_t n = std::min<uint32_t>(f.sacked_seen, 3);
  uint32_t pos = n;
  while (pos > 0 && top[pos - 1] < tx_index) --pos;
  if (pos < 3) {
    for (uint32_t i = std::min<uint32_t>(n, 2); i > pos; --i) {
      top[i] = top[i - 1];
    }
    top[pos] = tx_index;
  }
  ++f.sacked_seen;
  if (f.sacked_seen < config_.dupthresh) return;
  const uint64_t threshold = top[config_.dupthresh - 1];
  uint64_t i = std::max(f.loss_scan, f.tx_base);
  for (; i < threshold; ++i) {
    if (f.Record(i).state == TxState::kInFlight) {
      *newly_lost += f.Record(i).len;
      MarkLost(f, i, now);
    }
  }
  f.loss_scan = std::max(f.loss_scan, threshold);
}

void Transfer::ProcessAck(const AckRecord& ack, SimTime now) {
  if (complete_) return;
  Flow& f = *flows_[ack.flow];
  if (ack.tx_index >= f.next_tx) {
    throw std::logic_error("ACK for a segment that was never sent");
  }
  if (!f.Tracked(ack.tx_index)) return;
  TxRecord& r = f.Record(ack.tx_index);
  if (r.state == TxState::kSacked) return;

  RateSample rs;
  rs.prior_inflight = f.inflight;
  if (r.state == TxState::kInFlight) f.inflight -= r.len;
  r.state = TxState::kSacked;
  f.delivered += r.len;
  f.delivered_time = now;
  f.stats.delivered_bytes += r.len;

  const SimTime rtt = now - r.sent_at;
  UpdateRtt(f, rtt);

  rs.acked_bytes = r.len;
  rs.rtt = rtt;
  rs.delivered = f.delivered;
  rs.prior_delivered = r.delivered;
  rs.delivered_delta_bytes = f.delivered - r.delivered;
  rs.is_app_limited = r.app_limited;
  rs.tx_in_flight = r.tx_in_flight;
  const SimTime send_elapsed = r.sent_at - r.first_sent_time;
  const SimTime ack_elapsed = f.delivered_time - r.delivered_time;
  f.first_sent_time = r.sent_at;
  rs.interval = std::max(send_elapsed, ack_elapsed);
  // Intervals shorter than the path RTT overestimate the rate.
  if (rs.interval < f.min_rtt) rs.interval = 0;
  const SimTime sent_at = r.sent_at;
  const uint64_t lost_at_send = r.lost;

  uint64_t newly_lost = 0;
  DetectLosses(f, ack.tx_index, now, &newly_lost);
  rs.newly_lost_bytes = newly_lost;
  rs.lost = f.lost_total - lost_at_send;
  rs.inflight = f.inflight;
  rs.srtt = f.srtt;
  rs.ce_marked = ack.ce;

  if (f.app_limited_until != 0 && f.delivered > f.app_limited_until) {
    f.app_limited_until = 0;
  }
  if (ack.ce) f.cc->OnCe(sent_at, now);
  f.cc->OnAck(rs, now);
  if (f.cc->suppresses_rate_samples()) {
    f.app_limited_until = std::max<uint64_t>(f.delivered + f.inflight, 1);
  }
  if (ack_observer_) ack_observer_(AckView{f.id, now, *f.cc, rs});
  PopResolved(f);
  TrySend(f, now);
}

void Transfer::OnRtoTimer(Flow& f, SimTime now) {
  f.rto_pending = false;
  if (complete_) return;
  const TxRecord* oldest = nullptr;
  for (const TxRecord& r : f.tx) {
    if (r.state == TxState::kInFlight) {
      oldest = &r;
      break;
    }
  }
  if (oldest == nullptr) return;
  const SimTime deadline = oldest->sent_at + (f.rto << f.backoff_shift);
  if (now < deadline) {
    f.rto_pending = true;
    sim_->Schedule(deadline, target_id_, kRto, f.id);
    return;
  }
  for (uint64_t i = f.tx_base; i < f.next_tx; ++i) {
    if (f.Record(i).state == TxState::kInFlight) MarkLost(f, i, now);
  }
  ++f.stats.rto_count;
  f.backoff_shift = std::min(f.backoff_shift + 1, kMaxBackoffShift);
  f.cc->OnRto(now);
  f.next_send = static_cast<double>(now);
  TrySend(f, now);
}

}  // namespace hpwan
