#pragma once

#include "thz/frame_codec.hpp"
#include "thz/link_budget.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace thz {

enum class NodeId { PRC, PRDEV };

enum class PrcPhase { PSP_BEACONING, AWAIT_FIRST_DATA, PAP_ACTIVE };
enum class PrdevPhase { SCANNING, AWAIT_ASSOC_RSP, PAP_ACTIVE };

enum class TimerId { BEACON, PRC_TIMEOUT, NEXT_TX, ACK_RETRY, LINGER };

enum class EventKind { FRAME_ARRIVAL, TIMER_EXPIRY, APP_DATA_READY };

/// One event on the discrete timeline. Events are processed in
/// non-decreasing time; ties break by kind order, then insertion order.
struct SimEvent {
    double time_s = 0.0;
    EventKind kind = EventKind::TIMER_EXPIRY;
    FrameType frame_type = FrameType::BEACON; // FRAME_ARRIVAL
    bool in_access_slot = false;              // FRAME_ARRIVAL of ASSOC_REQ
    TimerId timer = TimerId::BEACON;          // TIMER_EXPIRY
    uint64_t app_bytes = 0;                   // APP_DATA_READY
};

enum class AckPolicy { NONE, PER_FRAME };

struct SessionConfig {
    LinkConfig link;
    double sifs_s = 1e-6;
    double beacon_period_s = 10e-3;
    int slot_count = 8;
    double slot_duration_s = 100e-6;
    double prc_timeout_s = 100e-3;
    uint64_t payload_bytes_total = 0;
    uint32_t frame_payload_bytes = kMinFrameLengthBytes;
    AckPolicy ack_policy = AckPolicy::NONE;
    double frame_loss_probability = 0.0;
    /// If true, loss is derived from the link margin instead
    /// (negative margin -> every frame lost).
    bool loss_from_margin = false;
    /// How long the PRDEV stays associated after its queue drains before
    /// disassociating; it keeps the pairnet alive with Probe Requests.
    double linger_s = 0.0;
    double probe_interval_s = 0.0; // 0: prc_timeout_s / 2
    uint32_t assoc_payload_bytes = 0; // higher-layer setup blob
    double max_sim_s = 5.0;
};

struct PrcState {
    PrcPhase phase = PrcPhase::PSP_BEACONING;
    double timeout_deadline_s = 0.0; // meaningful outside PSP only
    double beacon_period_s = 10e-3;
    int slot_count = 8;
    double slot_duration_s = 100e-6;
    double prc_timeout_s = 100e-3;
    bool send_acks = false;
};

struct PrdevState {
    PrdevPhase phase = PrdevPhase::SCANNING;
    uint64_t pending_payload_bytes = 0;
    uint32_t in_flight_bytes = 0; // unacknowledged DATA chunk (PER_FRAME)
    bool app_complete = false;
    bool use_ack = false;
    uint32_t frame_payload_bytes = kMinFrameLengthBytes;
    double probe_interval_s = 50e-3;
};

/// What a state machine asks the scheduler to do. Frame transmissions are
/// paced by the scheduler (SIFS spacing, access-slot alignment); timers
/// with time_s <= event time fire as soon as the medium allows.
struct Action {
    enum class Kind { SEND_FRAME, ARM_TIMER, CANCEL_TIMER };
    Kind kind = Kind::SEND_FRAME;
    FrameType frame_type = FrameType::BEACON;
    uint32_t payload_bytes = 0;
    TimerId timer = TimerId::BEACON;
    double time_s = 0.0;
};

/// Pairnet coordinator transition function. Pure: no side effects.
std::pair<PrcState, std::vector<Action>> prc_step(const PrcState& state,
                                                  const SimEvent& event);

/// Pairnet device transition function. Pure: no side effects.
std::pair<PrdevState, std::vector<Action>> prdev_step(const PrdevState& state,
                                                      const SimEvent& event);

struct TraceRecord {
    double t_start_s = 0.0;
    double t_end_s = 0.0;
    NodeId sender = NodeId::PRC;
    FrameType frame_type = FrameType::BEACON;
    uint64_t payload_bits = 0;
    bool delivered = false;
};

struct SessionTrace {
    std::vector<TraceRecord> records;
    bool associated = false;
    double association_latency_s = -1.0;
    uint64_t delivered_payload_bytes = 0;
    double goodput_gbps = 0.0;
    double overhead_fraction = 0.0;
    PrcPhase final_prc_phase = PrcPhase::PSP_BEACONING;
    PrdevPhase final_prdev_phase = PrdevPhase::SCANNING;
};

/// Runs one pairnet session end to end. Deterministic for a given
/// (config, seed) pair.
SessionTrace simulate_session(const SessionConfig& config, uint64_t seed);

/// Closed-form steady-state goodput of the PAP data exchange.
double net_throughput_gbps(uint32_t frame_payload_bytes, AckPolicy ack_policy,
                           double sifs_s, const Mcs& mcs, const ChannelDescriptor& channel);

std::string to_string(FrameType t);
std::string to_string(NodeId n);

/// Trace as CSV (one row per frame) followed by '#'-prefixed summary lines.
std::string trace_to_csv(const SessionTrace& trace);

} // namespace thz
