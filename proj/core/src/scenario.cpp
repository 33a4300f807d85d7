#include "thz/scenario.hpp"

#include "thz/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace thz {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("bad numeric value for '" + key + "': " + value);
    }
}

uint64_t parse_uint(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    if (v < 0 || v != std::floor(v))
        throw ValidationError("'" + key + "' must be a non-negative integer");
    return static_cast<uint64_t>(v);
}

} // namespace

Scenario parse_scenario(std::istream& in) {
    Scenario sc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("scenario line " + std::to_string(lineno) +
                                  ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "profile")
            sc.profile = value;
        else if (key == "channel")
            sc.channel_id = static_cast<int>(parse_uint(key, value));
        else if (key == "mcs")
            sc.mcs = value;
        else if (key == "distance_m")
            sc.distance_m = parse_double(key, value);
        else if (key == "payload_bytes")
            sc.payload_bytes = parse_uint(key, value);
        else if (key == "frame_payload_bytes")
            sc.frame_payload_bytes = static_cast<uint32_t>(parse_uint(key, value));
        else if (key == "sifs_s")
            sc.sifs_s = parse_double(key, value);
        else if (key == "beacon_period_s")
            sc.beacon_period_s = parse_double(key, value);
        else if (key == "slot_count")
            sc.slot_count = static_cast<int>(parse_uint(key, value));
        else if (key == "slot_duration_s")
            sc.slot_duration_s = parse_double(key, value);
        else if (key == "prc_timeout_s")
            sc.prc_timeout_s = parse_double(key, value);
        else if (key == "ack") {
            if (value == "none")
                sc.ack_policy = AckPolicy::NONE;
            else if (value == "per_frame")
                sc.ack_policy = AckPolicy::PER_FRAME;
            else
                throw ValidationError("ack must be 'none' or 'per_frame'");
        } else if (key == "loss")
            sc.frame_loss_probability = parse_double(key, value);
        else if (key == "loss_from_margin")
            sc.loss_from_margin = parse_uint(key, value) != 0;
        else if (key == "linger_s")
            sc.linger_s = parse_double(key, value);
        else if (key == "probe_interval_s")
            sc.probe_interval_s = parse_double(key, value);
        else if (key == "assoc_payload_bytes")
            sc.assoc_payload_bytes = static_cast<uint32_t>(parse_uint(key, value));
        else if (key == "max_sim_s")
            sc.max_sim_s = parse_double(key, value);
        else if (key == "seed")
            sc.seed = parse_uint(key, value);
        else
            throw ValidationError("unknown scenario key '" + key + "'");
    }
    if (sc.distance_m <= 0) throw ValidationError("distance_m must be positive");
    if (sc.frame_payload_bytes < kMinFrameLengthBytes ||
        sc.frame_payload_bytes > kMaxFrameLengthBytes)
        throw ValidationError("frame_payload_bytes outside [2048, 2099200]");
    if (sc.frame_loss_probability < 0 || sc.frame_loss_probability > 1)
        throw ValidationError("loss must be within [0, 1]");
    return sc;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    return parse_scenario(in);
}

SessionConfig scenario_to_session(const Scenario& scenario) {
    const UseCaseProfile& profile = profile_by_name(scenario.profile);
    const ChannelDescriptor& channel = channel_by_id(scenario.channel_id);

    Mcs mcs;
    if (scenario.mcs == "auto") {
        LinkConfig probe = profile.make_link(channel, scenario.distance_m);
        mcs = best_mcs(probe, profile.default_mcs.mode);
    } else {
        mcs = parse_mcs(scenario.mcs);
    }

    SessionConfig cfg;
    cfg.link = profile.make_link(channel, scenario.distance_m, mcs);
    cfg.sifs_s = scenario.sifs_s;
    cfg.beacon_period_s = scenario.beacon_period_s;
    cfg.slot_count = scenario.slot_count;
    cfg.slot_duration_s = scenario.slot_duration_s;
    cfg.prc_timeout_s = scenario.prc_timeout_s;
    cfg.payload_bytes_total = scenario.payload_bytes;
    cfg.frame_payload_bytes = scenario.frame_payload_bytes;
    cfg.ack_policy = scenario.ack_policy;
    cfg.frame_loss_probability = scenario.frame_loss_probability;
    cfg.loss_from_margin = scenario.loss_from_margin;
    cfg.linger_s = scenario.linger_s;
    cfg.probe_interval_s = scenario.probe_interval_s;
    cfg.assoc_payload_bytes = scenario.assoc_payload_bytes;
    cfg.max_sim_s = scenario.max_sim_s;
    return cfg;
}

namespace {

std::string fixed_point(double value, int decimals, bool truncate) {
    const double scale = std::pow(10.0, decimals);
    const double scaled = truncate ? std::floor(value * scale + 1e-9) : std::round(value * scale);
    std::ostringstream os;
    os.precision(decimals);
    os << std::fixed << scaled / scale;
    return os.str();
}

} // namespace

std::string format_rate(double gbps) { return fixed_point(gbps, 2, true); }
std::string format_range(double meters) { return fixed_point(meters, 3, false); }
std::string format_db(double db) { return fixed_point(db, 2, false); }

std::string run_plan_dump() {
    std::ostringstream os;
    os << "id,center_ghz,bandwidth_ghz\n";
    for (const ChannelDescriptor& ch : build_plan()) {
        std::ostringstream row;
        row.precision(2);
        row << std::fixed << ch.id << ',' << ch.center_ghz() << ',' << ch.bandwidth_ghz();
        os << row.str() << '\n';
    }
    return os.str();
}

std::string run_rate_table() {
    std::ostringstream os;
    os << "mode,mcs,bandwidth_ghz,symbol_rate_gbd,rate_gbps\n";
    for (const Mcs& mcs : all_mcs()) {
        for (int m : {1, 2, 4, 6, 8, 12, 24, 32}) {
            ChannelDescriptor ch;
            for (const ChannelDescriptor& c : build_plan())
                if (c.multiplier == m) {
                    ch = c;
                    break;
                }
            os << (mcs.mode == PhyMode::THZ_SC ? "thz-sc" : "thz-ook") << ','
               << to_string(mcs) << ',' << format_rate(ch.bandwidth_ghz()) << ','
               << format_rate(symbol_rate_gbd(ch)) << ','
               << format_rate(data_rate_gbps(mcs, ch)) << '\n';
        }
    }
    return os.str();
}

namespace {

// First (lowest-frequency) channel of each bandwidth class.
std::vector<ChannelDescriptor> class_channels() {
    std::vector<ChannelDescriptor> v;
    int last_multiplier = 0;
    for (const ChannelDescriptor& ch : build_plan()) {
        if (ch.multiplier != last_multiplier) {
            v.push_back(ch);
            last_multiplier = ch.multiplier;
        }
    }
    return v;
}

constexpr double kAnchorRateGbps = 100.0;

} // namespace

std::string run_range_figure(std::vector<RangeAnchor>* anchors) {
    std::ostringstream os;
    os << "profile,channel_id,bandwidth_ghz,best_mcs,best_range_m,mcs_100g,range_100g_m\n";
    std::vector<RangeAnchor> collected;

    for (const UseCaseProfile& profile : use_case_profiles()) {
        RangeAnchor anchor;
        anchor.profile = profile.name;
        for (const ChannelDescriptor& ch : class_channels()) {
            // widest-reaching MCS for this bandwidth
            double best_range = 0.0;
            Mcs best;
            bool any = false;
            // and the widest-reaching MCS still sustaining >= 100 Gbit/s
            double best_range_100g = 0.0;
            Mcs best_100g;
            bool any_100g = false;
            for (const Mcs& mcs : mcs_for_mode(profile.default_mcs.mode)) {
                const RangeResult rr = max_range_m(profile, mcs, ch);
                if (!rr.feasible) continue;
                if (!any || rr.range_m > best_range) {
                    any = true;
                    best_range = rr.range_m;
                    best = mcs;
                }
                if (data_rate_gbps(mcs, ch) >= kAnchorRateGbps &&
                    (!any_100g || rr.range_m > best_range_100g)) {
                    any_100g = true;
                    best_range_100g = rr.range_m;
                    best_100g = mcs;
                }
            }
            os << profile.name << ',' << ch.id << ',' << format_rate(ch.bandwidth_ghz())
               << ',';
            if (any)
                os << to_string(best) << ',' << format_range(best_range);
            else
                os << ",0.000";
            os << ',';
            if (any_100g)
                os << to_string(best_100g) << ',' << format_range(best_range_100g);
            else
                os << ",";
            os << '\n';
        }

        // anchor: profile MCS on the smallest channel that sustains 100 Gbit/s
        for (const ChannelDescriptor& ch : class_channels()) {
            if (data_rate_gbps(profile.default_mcs, ch) < kAnchorRateGbps) continue;
            anchor.channel_id = ch.id;
            anchor.range_100g_m = max_range_m(profile, profile.default_mcs, ch).range_m;
            break;
        }
        anchor.range_small_m =
            max_range_m(profile, profile.default_mcs, channel_by_id(1)).range_m;
        collected.push_back(anchor);
    }

    for (const RangeAnchor& a : collected) {
        os << "# anchor " << a.profile << " channel=" << a.channel_id
           << " range_100g_m=" << format_range(a.range_100g_m)
           << " range_2p16ghz_m=" << format_range(a.range_small_m) << '\n';
    }
    if (anchors) *anchors = collected;
    return os.str();
}

KioskDemoReport run_kiosk_download_demo(uint64_t payload_bytes, uint64_t seed) {
    const UseCaseProfile& kiosk = profile_by_name("kiosk");

    // smallest channel where the kiosk MCS sustains >= 72 Gbit/s
    ChannelDescriptor channel;
    for (const ChannelDescriptor& ch : class_channels()) {
        if (data_rate_gbps(kiosk.default_mcs, ch) >= 72.0) {
            channel = ch;
            break;
        }
    }

    SessionConfig cfg;
    cfg.link = kiosk.make_link(channel, 0.3);
    cfg.payload_bytes_total = payload_bytes;
    cfg.frame_payload_bytes = 1'048'576;
    cfg.max_sim_s = 10.0;

    const SessionTrace trace = simulate_session(cfg, seed);

    KioskDemoReport report;
    report.payload_bytes = payload_bytes;
    report.channel_id = channel.id;
    report.mcs = kiosk.default_mcs;
    report.phy_rate_gbps = data_rate_gbps(kiosk.default_mcs, channel);
    report.goodput_gbps = trace.goodput_gbps;
    report.complete = trace.delivered_payload_bytes == payload_bytes;
    for (const TraceRecord& r : trace.records)
        if (r.frame_type == FrameType::DISASSOC_REQ) report.completion_s = r.t_end_s;
    return report;
}

std::string kiosk_report_to_string(const KioskDemoReport& report) {
    std::ostringstream os;
    os << "payload_bytes=" << report.payload_bytes << '\n'
       << "channel_id=" << report.channel_id << '\n'
       << "mcs=" << to_string(report.mcs) << '\n'
       << "phy_rate_gbps=" << format_rate(report.phy_rate_gbps) << '\n'
       << "goodput_gbps=" << format_rate(report.goodput_gbps) << '\n'
       << "complete=" << (report.complete ? 1 : 0) << '\n';
    os.precision(6);
    os << std::fixed << "completion_s=" << report.completion_s << '\n';
    return os.str();
}

} // namespace thz
