#pragma once

#include "thz/mac_engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace thz {

/// A parsed scenario file: flat key=value lines, '#' comments.
struct Scenario {
    std::string profile = "kiosk";
    int channel_id = kDefaultChannelId;
    std::string mcs = "auto"; // MCS name or "auto" for best feasible
    double distance_m = 1.0;
    uint64_t payload_bytes = 0;
    uint32_t frame_payload_bytes = kMinFrameLengthBytes;
    double sifs_s = 1e-6;
    double beacon_period_s = 10e-3;
    int slot_count = 8;
    double slot_duration_s = 100e-6;
    double prc_timeout_s = 100e-3;
    AckPolicy ack_policy = AckPolicy::NONE;
    double frame_loss_probability = 0.0;
    bool loss_from_margin = false;
    double linger_s = 0.0;
    double probe_interval_s = 0.0;
    uint32_t assoc_payload_bytes = 0;
    double max_sim_s = 5.0;
    uint64_t seed = 1;
};

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_file(const std::string& path);

/// Resolves the scenario into a runnable session config; "auto" picks the
/// best feasible MCS for the configured link.
SessionConfig scenario_to_session(const Scenario& scenario);

/// Fixed-point formatting used by all CSV output: rates are truncated to
/// 2 decimals (matching the quoted anchor values), ranges 3 decimals,
/// dB terms 2 decimals.
std::string format_rate(double gbps);
std::string format_range(double meters);
std::string format_db(double db);

/// Full MCS x bandwidth rate table (15 x 8 = 120 rows) as CSV.
std::string run_rate_table();

/// Channel plan as CSV: id,center_ghz,bandwidth_ghz.
std::string run_plan_dump();

struct RangeAnchor {
    std::string profile;
    int channel_id = 0;           // smallest channel sustaining >= 100 Gbit/s
    double range_100g_m = 0.0;    // max range at the profile MCS on that channel
    double range_small_m = 0.0;   // max range at the profile MCS on the 2.16 GHz channel
};

/// Per-profile, per-bandwidth range sweep as CSV, with the four
/// 100 Gbit/s anchors in '#'-prefixed summary lines. If anchors is
/// non-null the anchor values are also returned for inspection.
std::string run_range_figure(std::vector<RangeAnchor>* anchors = nullptr);

struct KioskDemoReport {
    uint64_t payload_bytes = 0;
    int channel_id = 0;
    Mcs mcs;
    double phy_rate_gbps = 0.0;
    double completion_s = 0.0; // simulated time until disassociation
    double goodput_gbps = 0.0;
    bool complete = false;
};

/// Simulates a kiosk file download (default 900 MB) on a >= 72 Gbit/s
/// kiosk configuration and reports the simulated completion time.
KioskDemoReport run_kiosk_download_demo(uint64_t payload_bytes = 900'000'000ULL,
                                        uint64_t seed = 1);

std::string kiosk_report_to_string(const KioskDemoReport& report);

} // namespace thz
