#include "thz/mac_engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <sstream>

namespace thz {

namespace {

Action send(FrameType type, uint32_t payload_bytes = 0) {
    Action a;
    a.kind = Action::Kind::SEND_FRAME;
    a.frame_type = type;
    a.payload_bytes = payload_bytes;
    return a;
}

Action arm(TimerId timer, double time_s) {
    Action a;
    a.kind = Action::Kind::ARM_TIMER;
    a.timer = timer;
    a.time_s = time_s;
    return a;
}

Action cancel(TimerId timer) {
    Action a;
    a.kind = Action::Kind::CANCEL_TIMER;
    a.timer = timer;
    return a;
}

// Transmit-opportunity logic shared by the PAP entry and NEXT_TX paths:
// data if queued, Disassociation Request once the application is done,
// otherwise a Probe Request to keep the PRC timeout from firing.
void prdev_tx_opportunity(PrdevState& next, const SimEvent& event,
                          std::vector<Action>& actions) {
    if (next.in_flight_bytes > 0) {
        actions.push_back(send(FrameType::DATA, next.in_flight_bytes)); // retransmission
        return;
    }
    if (next.pending_payload_bytes > 0) {
        const uint32_t chunk = static_cast<uint32_t>(std::min<uint64_t>(
            next.pending_payload_bytes, next.frame_payload_bytes));
        if (next.use_ack)
            next.in_flight_bytes = chunk;
        else
            next.pending_payload_bytes -= chunk;
        actions.push_back(send(FrameType::DATA, chunk));
        return;
    }
    if (next.app_complete) {
        next.phase = PrdevPhase::SCANNING;
        actions.push_back(send(FrameType::DISASSOC_REQ));
        return;
    }
    actions.push_back(send(FrameType::PROBE_REQ));
    actions.push_back(arm(TimerId::NEXT_TX, event.time_s + next.probe_interval_s));
}

} // namespace

std::pair<PrcState, std::vector<Action>> prc_step(const PrcState& state,
                                                  const SimEvent& event) {
    PrcState next = state;
    std::vector<Action> actions;

    switch (state.phase) {
        case PrcPhase::PSP_BEACONING:
            if (event.kind == EventKind::TIMER_EXPIRY && event.timer == TimerId::BEACON) {
                actions.push_back(send(FrameType::BEACON));
                actions.push_back(arm(TimerId::BEACON, event.time_s + state.beacon_period_s));
            } else if (event.kind == EventKind::FRAME_ARRIVAL &&
                       event.frame_type == FrameType::ASSOC_REQ && event.in_access_slot) {
                next.phase = PrcPhase::AWAIT_FIRST_DATA;
                next.timeout_deadline_s = event.time_s + state.prc_timeout_s;
                actions.push_back(cancel(TimerId::BEACON));
                actions.push_back(send(FrameType::ASSOC_RSP));
                actions.push_back(arm(TimerId::PRC_TIMEOUT, next.timeout_deadline_s));
            }
            // anything else in the PSP (stray data, out-of-slot requests) is ignored
            break;

        case PrcPhase::AWAIT_FIRST_DATA:
        case PrcPhase::PAP_ACTIVE:
            if (event.kind == EventKind::TIMER_EXPIRY && event.timer == TimerId::PRC_TIMEOUT) {
                next.phase = PrcPhase::PSP_BEACONING;
                actions.push_back(arm(TimerId::BEACON, event.time_s));
            } else if (event.kind == EventKind::FRAME_ARRIVAL) {
                if (event.frame_type == FrameType::DISASSOC_REQ) {
                    next.phase = PrcPhase::PSP_BEACONING;
                    actions.push_back(cancel(TimerId::PRC_TIMEOUT));
                    actions.push_back(arm(TimerId::BEACON, event.time_s));
                } else {
                    // every correctly received PRDEV frame refreshes the timeout
                    next.timeout_deadline_s = event.time_s + state.prc_timeout_s;
                    actions.push_back(arm(TimerId::PRC_TIMEOUT, next.timeout_deadline_s));
                    if (event.frame_type == FrameType::DATA) {
                        next.phase = PrcPhase::PAP_ACTIVE;
                        if (state.send_acks) actions.push_back(send(FrameType::ACK));
                    } else if (event.frame_type == FrameType::ASSOC_REQ) {
                        // duplicate request: the response was lost, repeat it
                        actions.push_back(send(FrameType::ASSOC_RSP));
                    }
                }
            }
            break;
    }
    return {next, actions};
}

std::pair<PrdevState, std::vector<Action>> prdev_step(const PrdevState& state,
                                                      const SimEvent& event) {
    PrdevState next = state;
    std::vector<Action> actions;

    if (event.kind == EventKind::APP_DATA_READY) {
        next.pending_payload_bytes += event.app_bytes;
        return {next, actions};
    }

    switch (state.phase) {
        case PrdevPhase::SCANNING:
            if (event.kind == EventKind::FRAME_ARRIVAL &&
                event.frame_type == FrameType::BEACON) {
                next.phase = PrdevPhase::AWAIT_ASSOC_RSP;
                actions.push_back(send(FrameType::ASSOC_REQ));
            }
            break;

        case PrdevPhase::AWAIT_ASSOC_RSP:
            if (event.kind == EventKind::FRAME_ARRIVAL) {
                if (event.frame_type == FrameType::ASSOC_RSP) {
                    next.phase = PrdevPhase::PAP_ACTIVE;
                    prdev_tx_opportunity(next, event, actions);
                } else if (event.frame_type == FrameType::BEACON) {
                    actions.push_back(send(FrameType::ASSOC_REQ)); // request was lost
                }
            }
            break;

        case PrdevPhase::PAP_ACTIVE:
            if (event.kind == EventKind::TIMER_EXPIRY) {
                if (event.timer == TimerId::NEXT_TX || event.timer == TimerId::ACK_RETRY) {
                    prdev_tx_opportunity(next, event, actions);
                } else if (event.timer == TimerId::LINGER) {
                    next.app_complete = true;
                    actions.push_back(arm(TimerId::NEXT_TX, event.time_s));
                }
            } else if (event.kind == EventKind::FRAME_ARRIVAL) {
                if (event.frame_type == FrameType::ACK) {
                    if (state.in_flight_bytes > 0) {
                        next.pending_payload_bytes -= state.in_flight_bytes;
                        next.in_flight_bytes = 0;
                        actions.push_back(cancel(TimerId::ACK_RETRY));
                        actions.push_back(arm(TimerId::NEXT_TX, event.time_s));
                    }
                } else if (event.frame_type == FrameType::BEACON) {
                    // the PRC timed out and tore the pairnet down
                    next.phase = PrdevPhase::SCANNING;
                }
            }
            break;
    }
    return {next, actions};
}

namespace {

struct QueuedEvent {
    double time_s;
    int kind_rank;
    uint64_t insertion;
    NodeId target;
    SimEvent event;
    uint64_t timer_generation = 0;
    size_t tx_index = 0; // FRAME_ARRIVAL: which transmission landed
};

struct QueuedEventLater {
    bool operator()(const QueuedEvent& a, const QueuedEvent& b) const {
        if (a.time_s != b.time_s) return a.time_s > b.time_s;
        if (a.kind_rank != b.kind_rank) return a.kind_rank > b.kind_rank;
        return a.insertion > b.insertion;
    }
};

struct Transmission {
    NodeId sender;
    FrameType type;
    uint32_t payload_bytes;
    uint16_t seq;
    double t_start;
    double t_end;
    bool delivered;
};

class SessionRunner {
public:
    SessionRunner(const SessionConfig& config, uint64_t seed)
        : cfg_(config), rng_(seed) {
        prc_.beacon_period_s = cfg_.beacon_period_s;
        prc_.slot_count = cfg_.slot_count;
        prc_.slot_duration_s = cfg_.slot_duration_s;
        prc_.prc_timeout_s = cfg_.prc_timeout_s;
        prc_.send_acks = cfg_.ack_policy == AckPolicy::PER_FRAME;
        prdev_.use_ack = prc_.send_acks;
        prdev_.frame_payload_bytes = cfg_.frame_payload_bytes;
        prdev_.probe_interval_s =
            cfg_.probe_interval_s > 0 ? cfg_.probe_interval_s : cfg_.prc_timeout_s / 2.0;

        loss_probability_ = cfg_.frame_loss_probability;
        if (cfg_.loss_from_margin)
            loss_probability_ = link_feasible(cfg_.link).feasible ? 0.0 : 1.0;
    }

    SessionTrace run() {
        push_timer(NodeId::PRC, TimerId::BEACON, 0.0, ++timer_gen_[key(NodeId::PRC, TimerId::BEACON)]);
        if (cfg_.payload_bytes_total > 0) {
            SimEvent ev;
            ev.time_s = 0.0;
            ev.kind = EventKind::APP_DATA_READY;
            ev.app_bytes = cfg_.payload_bytes_total;
            push(NodeId::PRDEV, ev);
        } else {
            prdev_.app_complete = cfg_.linger_s <= 0.0;
        }

        while (!queue_.empty()) {
            QueuedEvent qe = queue_.top();
            queue_.pop();
            if (qe.time_s > cfg_.max_sim_s) break;
            if (qe.event.kind == EventKind::TIMER_EXPIRY &&
                qe.timer_generation != timer_gen_[key(qe.target, qe.event.timer)])
                continue; // cancelled or re-armed

            dispatch(qe);
            maybe_handle_idle_queue(qe.time_s);
            if (session_complete()) break;
        }
        return finalize();
    }

private:
    static int key(NodeId node, TimerId timer) {
        return static_cast<int>(node) * 8 + static_cast<int>(timer);
    }

    static int rank(EventKind kind) { return static_cast<int>(kind); }

    void push(NodeId target, const SimEvent& ev, uint64_t gen = 0, size_t tx_index = 0) {
        queue_.push({ev.time_s, rank(ev.kind), insertion_++, target, ev, gen, tx_index});
    }

    void push_timer(NodeId target, TimerId timer, double time_s, uint64_t gen) {
        SimEvent ev;
        ev.time_s = time_s;
        ev.kind = EventKind::TIMER_EXPIRY;
        ev.timer = timer;
        push(target, ev, gen);
    }

    void dispatch(const QueuedEvent& qe) {
        if (qe.event.kind == EventKind::FRAME_ARRIVAL)
            account_arrival(qe);
        std::vector<Action> actions;
        if (qe.target == NodeId::PRC) {
            auto [next, acts] = prc_step(prc_, qe.event);
            prc_ = next;
            actions = std::move(acts);
        } else {
            auto [next, acts] = prdev_step(prdev_, qe.event);
            prdev_ = next;
            actions = std::move(acts);
        }
        const bool is_retx = qe.event.kind == EventKind::TIMER_EXPIRY &&
                             qe.event.timer == TimerId::ACK_RETRY;
        for (const Action& a : actions) apply(qe.target, a, qe.event.time_s, is_retx);
    }

    void account_arrival(const QueuedEvent& qe) {
        const Transmission& tx = transmissions_[qe.tx_index];
        if (qe.target == NodeId::PRC && tx.type == FrameType::DATA) {
            if (!have_seen_data_ || tx.seq != last_data_seq_) {
                delivered_payload_ += tx.payload_bytes;
                have_seen_data_ = true;
                last_data_seq_ = tx.seq;
            }
        }
        if (qe.target == NodeId::PRDEV && tx.type == FrameType::ASSOC_RSP && !associated_) {
            associated_ = true;
            association_latency_ = qe.event.time_s;
        }
    }

    void apply(NodeId node, const Action& action, double now, bool is_retx) {
        switch (action.kind) {
            case Action::Kind::ARM_TIMER: {
                const uint64_t gen = ++timer_gen_[key(node, action.timer)];
                push_timer(node, action.timer, std::max(action.time_s, now), gen);
                break;
            }
            case Action::Kind::CANCEL_TIMER:
                ++timer_gen_[key(node, action.timer)];
                break;
            case Action::Kind::SEND_FRAME:
                transmit(node, action.frame_type, action.payload_bytes, now, is_retx);
                break;
        }
    }

    static bool is_psp_frame(FrameType type) {
        return type == FrameType::BEACON || type == FrameType::ASSOC_REQ ||
               type == FrameType::ASSOC_RSP;
    }

    uint32_t wire_payload_bytes(FrameType type, uint32_t data_bytes) const {
        if (type == FrameType::ASSOC_REQ || type == FrameType::ASSOC_RSP)
            return cfg_.assoc_payload_bytes;
        return data_bytes;
    }

    void transmit(NodeId sender, FrameType type, uint32_t data_bytes, double now,
                  bool is_retx) {
        double start = std::max(now, medium_free_at_ + cfg_.sifs_s);
        if (type == FrameType::ASSOC_REQ) {
            // at the beginning of the first access slot that is still open
            const double slot0 = last_beacon_end_ + cfg_.sifs_s;
            double slot_start = slot0;
            int i = 0;
            while (slot_start + 1e-15 < start && i + 1 < cfg_.slot_count) {
                ++i;
                slot_start = slot0 + i * cfg_.slot_duration_s;
            }
            start = std::max(start, slot_start);
        }

        const uint32_t payload = wire_payload_bytes(type, data_bytes);
        const Preamble preamble = is_psp_frame(type) ? Preamble::LONG : Preamble::SHORT;
        const double air =
            frame_airtime_s(preamble, payload, cfg_.link.mcs, cfg_.link.channel);
        const double end = start + air;
        medium_free_at_ = end;

        uint16_t seq;
        if (type == FrameType::DATA && is_retx) {
            seq = last_data_tx_seq_;
        } else {
            uint16_t& counter = sender == NodeId::PRC ? prc_seq_ : prdev_seq_;
            seq = counter;
            counter = static_cast<uint16_t>((counter + 1) & 0x0FFF);
            if (type == FrameType::DATA) last_data_tx_seq_ = seq;
        }

        const bool delivered =
            loss_probability_ <= 0.0 ||
            (loss_probability_ < 1.0 && uniform_(rng_) >= loss_probability_);

        transmissions_.push_back({sender, type, data_bytes, seq, start, end, delivered});
        const size_t tx_index = transmissions_.size() - 1;

        if (type == FrameType::BEACON) {
            last_beacon_end_ = end;
            if (pap_ended_) post_pap_beacon_ = true;
        }
        if (type == FrameType::DATA) {
            if (first_data_start_ < 0.0) first_data_start_ = start;
            last_pap_exchange_end_ = end;
            if (prdev_.use_ack) {
                const double ack_air = frame_airtime_s(Preamble::SHORT, 0, cfg_.link.mcs,
                                                       cfg_.link.channel);
                const double deadline = end + 2.0 * cfg_.sifs_s + ack_air + 0.5 * cfg_.sifs_s;
                const uint64_t gen = ++timer_gen_[key(NodeId::PRDEV, TimerId::ACK_RETRY)];
                push_timer(NodeId::PRDEV, TimerId::ACK_RETRY, deadline, gen);
            } else {
                const uint64_t gen = ++timer_gen_[key(NodeId::PRDEV, TimerId::NEXT_TX)];
                push_timer(NodeId::PRDEV, TimerId::NEXT_TX, end, gen);
            }
        }
        if (type == FrameType::ACK) last_pap_exchange_end_ = end;
        if (type == FrameType::DISASSOC_REQ) pap_ended_ = true;

        if (delivered) {
            SimEvent ev;
            ev.time_s = end;
            ev.kind = EventKind::FRAME_ARRIVAL;
            ev.frame_type = type;
            ev.in_access_slot = type == FrameType::ASSOC_REQ;
            push(sender == NodeId::PRC ? NodeId::PRDEV : NodeId::PRC, ev, 0, tx_index);
        }
    }

    // Arms the linger timer (or completes the app outright) once the PRDEV
    // queue has fully drained.
    void maybe_handle_idle_queue(double now) {
        if (prdev_.phase != PrdevPhase::PAP_ACTIVE) return;
        if (prdev_.pending_payload_bytes > 0 || prdev_.in_flight_bytes > 0) return;
        if (prdev_.app_complete || linger_armed_) return;
        if (cfg_.linger_s <= 0.0) {
            prdev_.app_complete = true;
        } else {
            linger_armed_ = true;
            const uint64_t gen = ++timer_gen_[key(NodeId::PRDEV, TimerId::LINGER)];
            push_timer(NodeId::PRDEV, TimerId::LINGER, now + cfg_.linger_s, gen);
        }
    }

    bool session_complete() const {
        return associated_ && prc_.phase == PrcPhase::PSP_BEACONING &&
               prdev_.phase == PrdevPhase::SCANNING && post_pap_beacon_;
    }

    SessionTrace finalize() {
        SessionTrace trace;
        std::stable_sort(transmissions_.begin(), transmissions_.end(),
                         [](const Transmission& a, const Transmission& b) {
                             return a.t_start < b.t_start;
                         });
        for (const Transmission& tx : transmissions_) {
            trace.records.push_back({tx.t_start, tx.t_end, tx.sender, tx.type,
                                     static_cast<uint64_t>(tx.payload_bytes) * 8, tx.delivered});
        }
        trace.associated = associated_;
        trace.association_latency_s = association_latency_;
        trace.delivered_payload_bytes = delivered_payload_;
        if (first_data_start_ >= 0.0 && last_pap_exchange_end_ > first_data_start_) {
            const double duration = last_pap_exchange_end_ + cfg_.sifs_s - first_data_start_;
            trace.goodput_gbps = static_cast<double>(delivered_payload_) * 8.0 / duration / 1e9;
        }
        const double phy_rate = data_rate_gbps(cfg_.link.mcs, cfg_.link.channel);
        if (phy_rate > 0.0) trace.overhead_fraction = 1.0 - trace.goodput_gbps / phy_rate;
        trace.final_prc_phase = prc_.phase;
        trace.final_prdev_phase = prdev_.phase;
        return trace;
    }

    SessionConfig cfg_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    double loss_probability_ = 0.0;

    PrcState prc_;
    PrdevState prdev_;

    std::priority_queue<QueuedEvent, std::vector<QueuedEvent>, QueuedEventLater> queue_;
    uint64_t insertion_ = 0;
    std::map<int, uint64_t> timer_gen_;
    std::vector<Transmission> transmissions_;

    double medium_free_at_ = -1.0;
    double last_beacon_end_ = 0.0;
    uint16_t prc_seq_ = 0;
    uint16_t prdev_seq_ = 0;
    uint16_t last_data_tx_seq_ = 0;
    uint16_t last_data_seq_ = 0;
    bool have_seen_data_ = false;
    bool associated_ = false;
    double association_latency_ = -1.0;
    uint64_t delivered_payload_ = 0;
    double first_data_start_ = -1.0;
    double last_pap_exchange_end_ = -1.0;
    bool pap_ended_ = false;
    bool post_pap_beacon_ = false;
    bool linger_armed_ = false;
};

} // namespace

SessionTrace simulate_session(const SessionConfig& config, uint64_t seed) {
    return SessionRunner(config, seed).run();
}

double net_throughput_gbps(uint32_t frame_payload_bytes, AckPolicy ack_policy, double sifs_s,
                           const Mcs& mcs, const ChannelDescriptor& channel) {
    double cycle = frame_airtime_s(Preamble::SHORT, frame_payload_bytes, mcs, channel) + sifs_s;
    if (ack_policy == AckPolicy::PER_FRAME)
        cycle += frame_airtime_s(Preamble::SHORT, 0, mcs, channel) + sifs_s;
    return static_cast<double>(frame_payload_bytes) * 8.0 / cycle / 1e9;
}

std::string to_string(FrameType t) {
    switch (t) {
        case FrameType::BEACON: return "BEACON";
        case FrameType::ASSOC_REQ: return "ASSOC_REQ";
        case FrameType::ASSOC_RSP: return "ASSOC_RSP";
        case FrameType::DATA: return "DATA";
        case FrameType::ACK: return "ACK";
        case FrameType::PROBE_REQ: return "PROBE_REQ";
        case FrameType::DISASSOC_REQ: return "DISASSOC_REQ";
    }
    return "?";
}

std::string to_string(NodeId n) { return n == NodeId::PRC ? "PRC" : "PRDEV"; }

std::string trace_to_csv(const SessionTrace& trace) {
    std::ostringstream os;
    os << "time_s,sender,frame_type,bits,delivered\n";
    os.precision(9);
    os << std::fixed;
    for (const TraceRecord& r : trace.records) {
        os << r.t_start_s << ',' << to_string(r.sender) << ',' << to_string(r.frame_type)
           << ',' << r.payload_bits << ',' << (r.delivered ? 1 : 0) << '\n';
    }
    os << "# associated=" << (trace.associated ? 1 : 0) << '\n';
    os << "# association_latency_s=" << trace.association_latency_s << '\n';
    os << "# delivered_payload_bytes=" << trace.delivered_payload_bytes << '\n';
    os << "# goodput_gbps=" << trace.goodput_gbps << '\n';
    os << "# overhead_fraction=" << trace.overhead_fraction << '\n';
    return os.str();
}

} // namespace thz
