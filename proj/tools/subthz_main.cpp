// subthz: command-line front end for the sub-THz link/MAC toolkit.
//
// Subcommands: plan dump, rates, budget, range, mac run, kiosk-demo,
// codec encode|decode|vectors. Exit code 0 on success, 2 on any
// validation error (bad flags, bad scenario, malformed frame file).

#include "thz/channel_plan.hpp"
#include "thz/errors.hpp"
#include "thz/frame_codec.hpp"
#include "thz/link_budget.hpp"
#include "thz/mac_engine.hpp"
#include "thz/mcs.hpp"
#include "thz/scenario.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitValidation = 2;

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw thz::ValidationError("cannot open output file '" + out_path + "'");
    out << text;
    if (!out) throw thz::ValidationError("write to '" + out_path + "' failed");
}

std::vector<uint8_t> read_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw thz::ValidationError("cannot open input file '" + path + "'");
    return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                                std::istreambuf_iterator<char>());
}

void write_binary(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw thz::ValidationError("cannot open output file '" + path + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw thz::ValidationError("write to '" + path + "' failed");
}

std::string hex_dump(const std::vector<uint8_t>& bytes) {
    std::string s;
    s.reserve(bytes.size() * 2);
    static const char* digits = "0123456789abcdef";
    for (uint8_t b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

std::string budget_report(const std::string& profile_name, int channel_id,
                          const std::string& mcs_name, double distance_m) {
    const thz::UseCaseProfile& profile = thz::profile_by_name(profile_name);
    const thz::ChannelDescriptor& channel = thz::channel_by_id(channel_id);
    const thz::Mcs mcs = mcs_name == "auto" ? profile.default_mcs : thz::parse_mcs(mcs_name);
    if (!thz::is_valid(mcs)) throw thz::ValidationError("invalid MCS '" + mcs_name + "'");
    if (distance_m <= 0) throw thz::ValidationError("distance must be positive");

    const thz::LinkConfig link = profile.make_link(channel, distance_m, mcs);
    const double fspl = thz::fspl_db(link.carrier_ghz, link.distance_m);
    const double absorption = link.absorption_db_per_km * link.distance_m / 1000.0;
    const double rx = thz::rx_power_dbm(link);
    const double noise = thz::noise_floor_dbm(channel.bandwidth_ghz(), link.noise_figure_db);
    const double snr = thz::link_snr_db(link);
    const double evm = thz::evm_db(mcs);
    const double eff = thz::effective_snr_db(snr, evm);
    const double required = thz::required_snr_db(mcs);
    const thz::Feasibility feas = thz::link_feasible(link);

    std::ostringstream os;
    os << "profile=" << profile.name << '\n'
       << "channel=" << channel.id << '\n'
       << "bandwidth_ghz=" << thz::format_rate(channel.bandwidth_ghz()) << '\n'
       << "mcs=" << thz::to_string(mcs) << '\n'
       << "distance_m=" << thz::format_range(distance_m) << '\n'
       << "tx_power_dbm=" << thz::format_db(link.tx_power_dbm) << '\n'
       << "tx_gain_db=" << thz::format_db(link.tx_gain_db) << '\n'
       << "rx_gain_db=" << thz::format_db(link.rx_gain_db) << '\n'
       << "fspl_db=" << thz::format_db(fspl) << '\n'
       << "absorption_db=" << thz::format_db(absorption) << '\n'
       << "rx_power_dbm=" << thz::format_db(rx) << '\n'
       << "noise_floor_dbm=" << thz::format_db(noise) << '\n'
       << "snr_db=" << thz::format_db(snr) << '\n'
       << "evm_db=" << thz::format_db(evm) << '\n'
       << "effective_snr_db=" << thz::format_db(eff) << '\n'
       << "required_snr_db=" << thz::format_db(required) << '\n'
       << "sensitivity_dbm="
       << thz::format_db(thz::sensitivity_dbm(mcs, channel.bandwidth_ghz(),
                                              link.noise_figure_db))
       << '\n'
       << "margin_db=" << thz::format_db(feas.margin_db) << '\n'
       << "feasible=" << (feas.feasible ? 1 : 0) << '\n'
       << "rate_gbps=" << thz::format_rate(thz::data_rate_gbps(mcs, channel)) << '\n';
    return os.str();
}

thz::Frame build_frame(thz::PhyMode mode, const std::string& preamble,
                       const std::string& frame_type, int mcs_idx, uint32_t payload_bytes,
                       int pairnet, int src, int dest, int seq, bool ack,
                       const std::string& payload_file, uint64_t seed) {
    thz::Frame frame;
    if (preamble == "long")
        frame.preamble = thz::Preamble::LONG;
    else if (preamble == "short")
        frame.preamble = thz::Preamble::SHORT;
    else
        throw thz::ValidationError("preamble must be 'long' or 'short'");

    static const std::vector<std::pair<std::string, thz::FrameType>> kTypes = {
        {"beacon", thz::FrameType::BEACON},     {"assoc-req", thz::FrameType::ASSOC_REQ},
        {"assoc-rsp", thz::FrameType::ASSOC_RSP}, {"data", thz::FrameType::DATA},
        {"ack", thz::FrameType::ACK},           {"probe-req", thz::FrameType::PROBE_REQ},
        {"disassoc-req", thz::FrameType::DISASSOC_REQ}};
    bool found = false;
    for (const auto& [name, t] : kTypes)
        if (name == frame_type) {
            frame.mac_header.frame_type = t;
            found = true;
        }
    if (!found) throw thz::ValidationError("unknown frame type '" + frame_type + "'");

    frame.phy_header.mode = mode;
    frame.phy_header.mcs_index = mcs_idx;
    frame.mac_header.ack_policy = ack;
    frame.mac_header.pairnet_id = static_cast<uint16_t>(pairnet);
    frame.mac_header.src_id = static_cast<uint8_t>(src);
    frame.mac_header.dest_id = static_cast<uint8_t>(dest);
    frame.mac_header.seq_num = static_cast<uint16_t>(seq);

    if (!payload_file.empty()) {
        frame.payload = read_binary(payload_file);
    } else {
        frame.payload.resize(payload_bytes);
        std::mt19937_64 rng(seed);
        for (auto& b : frame.payload) b = static_cast<uint8_t>(rng());
    }
    frame.phy_header.frame_length_bytes = static_cast<uint32_t>(frame.payload.size());
    return frame;
}

std::string decode_report(const thz::DecodedFrame& decoded) {
    const thz::Frame& f = decoded.frame;
    std::ostringstream os;
    os << "preamble=" << (f.preamble == thz::Preamble::LONG ? "long" : "short") << '\n'
       << "mode=" << (f.phy_header.mode == thz::PhyMode::THZ_SC ? "thz-sc" : "thz-ook")
       << '\n'
       << "mcs_index=" << f.phy_header.mcs_index << '\n'
       << "mcs=" << thz::to_string(thz::mcs_from_index(f.phy_header.mode,
                                                       f.phy_header.mcs_index))
       << '\n'
       << "frame_length_bytes=" << f.phy_header.frame_length_bytes << '\n'
       << "frame_type=" << thz::to_string(f.mac_header.frame_type) << '\n'
       << "ack_policy=" << (f.mac_header.ack_policy ? 1 : 0) << '\n'
       << "pairnet_id=" << f.mac_header.pairnet_id << '\n'
       << "src_id=" << static_cast<int>(f.mac_header.src_id) << '\n'
       << "dest_id=" << static_cast<int>(f.mac_header.dest_id) << '\n'
       << "seq_num=" << f.mac_header.seq_num << '\n'
       << "corrected_bits=" << decoded.corrected_bits << '\n';
    return os.str();
}

std::string codec_vectors() {
    std::ostringstream os;
    struct Vector {
        std::string name;
        thz::Frame frame;
    };
    std::vector<Vector> vectors;

    {
        thz::Frame f;
        f.preamble = thz::Preamble::SHORT;
        f.phy_header.mode = thz::PhyMode::THZ_SC;
        f.phy_header.mcs_index = 11; // 64qam-14/15
        f.phy_header.frame_length_bytes = 2048;
        f.mac_header.frame_type = thz::FrameType::DATA;
        f.mac_header.ack_policy = true;
        f.mac_header.pairnet_id = 0xBEEF;
        f.mac_header.src_id = 0x02;
        f.mac_header.dest_id = 0x01;
        f.mac_header.seq_num = 0x123;
        f.payload.resize(2048);
        for (size_t i = 0; i < f.payload.size(); ++i)
            f.payload[i] = static_cast<uint8_t>(i * 7 + 3);
        vectors.push_back({"sc_data", f});
    }
    {
        thz::Frame f;
        f.preamble = thz::Preamble::LONG;
        f.phy_header.mode = thz::PhyMode::THZ_SC;
        f.phy_header.mcs_index = 0; // bpsk-11/15
        f.phy_header.frame_length_bytes = 2048;
        f.mac_header.frame_type = thz::FrameType::BEACON;
        f.mac_header.pairnet_id = 0x0001;
        f.mac_header.src_id = 0x00;
        f.mac_header.dest_id = 0xFF;
        f.mac_header.seq_num = 0;
        f.payload.assign(2048, 0x00);
        vectors.push_back({"psp_beacon", f});
    }
    {
        thz::Frame f;
        f.preamble = thz::Preamble::SHORT;
        f.phy_header.mode = thz::PhyMode::THZ_OOK;
        f.phy_header.mcs_index = 0; // ook-rs
        f.phy_header.frame_length_bytes = 2048;
        f.mac_header.frame_type = thz::FrameType::DATA;
        f.mac_header.pairnet_id = 0x00AA;
        f.mac_header.src_id = 0x10;
        f.mac_header.dest_id = 0x20;
        f.mac_header.seq_num = 0xFFF;
        f.payload.resize(2048);
        for (size_t i = 0; i < f.payload.size(); ++i)
            f.payload[i] = static_cast<uint8_t>(0xA5 ^ i);
        vectors.push_back({"ook_data", f});
    }

    for (const Vector& v : vectors) {
        const thz::BitBuffer bits = thz::encode_frame(v.frame);
        os << "vector=" << v.name << '\n'
           << "mode="
           << (v.frame.phy_header.mode == thz::PhyMode::THZ_SC ? "thz-sc" : "thz-ook")
           << '\n'
           << "bits=" << bits.size() << '\n'
           << "hex=" << hex_dump(bits.to_bytes()) << '\n';
    }
    return os.str();
}

int dispatch(int argc, char** argv) {
    CLI::App app{"IEEE 802.15.3d sub-THz link and MAC toolkit"};
    app.require_subcommand(1);

    std::string out_path;
    std::string profile_name = "kiosk";
    int channel_id = thz::kDefaultChannelId;
    std::string mcs_name = "auto";
    double distance_m = 1.0;
    uint64_t seed = 1;

    // plan dump
    CLI::App* plan = app.add_subcommand("plan", "Channel plan queries");
    plan->require_subcommand(1);
    CLI::App* plan_dump = plan->add_subcommand("dump", "Dump the 69-channel plan as CSV");
    plan_dump->add_option("--out", out_path, "Write output to a file instead of stdout");

    // rates
    CLI::App* rates = app.add_subcommand("rates", "MCS x bandwidth data-rate table (CSV)");
    rates->add_option("--out", out_path);

    // budget
    CLI::App* budget = app.add_subcommand("budget", "Itemized link budget for one link");
    budget->add_option("--profile", profile_name, "Use-case profile name");
    budget->add_option("--channel", channel_id, "Channel id (1..69)");
    budget->add_option("--mcs", mcs_name, "MCS name or 'auto' (profile default)");
    budget->add_option("--distance", distance_m, "Link distance in meters");
    budget->add_option("--out", out_path);

    // range
    CLI::App* range = app.add_subcommand("range", "Per-profile range sweep (CSV)");
    range->add_option("--out", out_path);

    // mac run
    std::string scenario_path;
    CLI::App* mac = app.add_subcommand("mac", "MAC session simulation");
    mac->require_subcommand(1);
    CLI::App* mac_run = mac->add_subcommand("run", "Run a scenario file, emit the trace");
    mac_run->add_option("scenario", scenario_path, "Scenario file (key=value lines)")
        ->required();
    mac_run->add_option("--seed", seed, "Override the scenario seed");
    mac_run->add_option("--out", out_path);

    // kiosk-demo
    uint64_t payload_bytes = 900'000'000ULL;
    CLI::App* kiosk = app.add_subcommand("kiosk-demo", "Simulated kiosk file download");
    kiosk->add_option("--payload-bytes", payload_bytes, "Transfer size in bytes");
    kiosk->add_option("--seed", seed);
    kiosk->add_option("--out", out_path);

    // codec
    CLI::App* codec = app.add_subcommand("codec", "Frame encode/decode");
    codec->require_subcommand(1);

    std::string mode_name = "sc";
    std::string preamble_name = "short";
    std::string frame_type_name = "data";
    int mcs_idx = 0;
    uint32_t frame_payload_bytes = thz::kMinFrameLengthBytes;
    int pairnet = 1, src = 2, dest = 1, seq = 0;
    bool ack_flag = false;
    std::string payload_file;

    CLI::App* enc = codec->add_subcommand("encode", "Build a frame and write its bit file");
    enc->add_option("--mode", mode_name, "PHY mode: sc | ook");
    enc->add_option("--preamble", preamble_name, "long | short");
    enc->add_option("--type", frame_type_name,
                    "beacon|assoc-req|assoc-rsp|data|ack|probe-req|disassoc-req");
    enc->add_option("--mcs-index", mcs_idx, "PHY header MCS field value");
    enc->add_option("--payload-bytes", frame_payload_bytes,
                    "Seeded random payload of this many bytes");
    enc->add_option("--payload-file", payload_file, "Read the payload from a file");
    enc->add_option("--pairnet", pairnet);
    enc->add_option("--src", src);
    enc->add_option("--dest", dest);
    enc->add_option("--seq", seq);
    enc->add_flag("--ack", ack_flag, "Set the ACK-request bit");
    enc->add_option("--seed", seed, "Seed for the generated payload");
    enc->add_option("--out", out_path, "Output frame file")->required();

    std::string frame_path;
    CLI::App* dec = codec->add_subcommand("decode", "Decode a frame file");
    dec->add_option("frame", frame_path, "Frame file (on-air bits, byte padded)")
        ->required();
    dec->add_option("--mode", mode_name, "PHY mode: sc | ook");
    dec->add_option("--out", out_path);

    CLI::App* vec = codec->add_subcommand("vectors", "Emit the conformance vector set");
    vec->add_option("--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    if (plan_dump->parsed()) {
        emit(out_path, thz::run_plan_dump());
    } else if (rates->parsed()) {
        emit(out_path, thz::run_rate_table());
    } else if (budget->parsed()) {
        emit(out_path, budget_report(profile_name, channel_id, mcs_name, distance_m));
    } else if (range->parsed()) {
        emit(out_path, thz::run_range_figure());
    } else if (mac_run->parsed()) {
        thz::Scenario scenario = thz::parse_scenario_file(scenario_path);
        if (mac_run->count("--seed") > 0) scenario.seed = seed;
        const thz::SessionConfig cfg = thz::scenario_to_session(scenario);
        const thz::SessionTrace trace = thz::simulate_session(cfg, scenario.seed);
        emit(out_path, thz::trace_to_csv(trace));
    } else if (kiosk->parsed()) {
        const thz::KioskDemoReport report = thz::run_kiosk_download_demo(payload_bytes, seed);
        emit(out_path, thz::kiosk_report_to_string(report));
    } else if (enc->parsed()) {
        if (mode_name != "sc" && mode_name != "ook")
            throw thz::ValidationError("mode must be 'sc' or 'ook'");
        const thz::PhyMode mode =
            mode_name == "sc" ? thz::PhyMode::THZ_SC : thz::PhyMode::THZ_OOK;
        const thz::Frame frame =
            build_frame(mode, preamble_name, frame_type_name, mcs_idx, frame_payload_bytes,
                        pairnet, src, dest, seq, ack_flag, payload_file, seed);
        write_binary(out_path, thz::encode_frame(frame).to_bytes());
    } else if (dec->parsed()) {
        if (mode_name != "sc" && mode_name != "ook")
            throw thz::ValidationError("mode must be 'sc' or 'ook'");
        const thz::PhyMode mode =
            mode_name == "sc" ? thz::PhyMode::THZ_SC : thz::PhyMode::THZ_OOK;
        const thz::BitBuffer bits = thz::BitBuffer::from_bytes(read_binary(frame_path));
        emit(out_path, decode_report(thz::decode_frame(bits, mode)));
    } else if (vec->parsed()) {
        emit(out_path, codec_vectors());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const thz::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}
