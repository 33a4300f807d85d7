#include "thz/frame_codec.hpp"
#include "thz/link_budget.hpp"
#include "thz/mac_engine.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

thz::Frame make_frame(uint32_t payload_bytes) {
    thz::Frame f;
    f.preamble = thz::Preamble::SHORT;
    f.phy_header.mode = thz::PhyMode::THZ_SC;
    f.phy_header.mcs_index = 11;
    f.phy_header.frame_length_bytes = payload_bytes;
    f.mac_header.frame_type = thz::FrameType::DATA;
    f.mac_header.pairnet_id = 1;
    f.mac_header.src_id = 2;
    f.mac_header.dest_id = 1;
    f.payload.resize(payload_bytes);
    std::mt19937_64 rng(7);
    for (auto& b : f.payload) b = static_cast<uint8_t>(rng());
    return f;
}

void BM_EncodeFrame(benchmark::State& state) {
    const thz::Frame frame = make_frame(static_cast<uint32_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(thz::encode_frame(frame));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_EncodeFrame)->Arg(2048)->Arg(65536);

void BM_DecodeFrame(benchmark::State& state) {
    const thz::BitBuffer bits =
        thz::encode_frame(make_frame(static_cast<uint32_t>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(thz::decode_frame(bits, thz::PhyMode::THZ_SC));
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_DecodeFrame)->Arg(2048)->Arg(65536);

void BM_MaxRange(benchmark::State& state) {
    const thz::UseCaseProfile& profile = thz::profile_by_name("fronthaul_backhaul");
    const thz::ChannelDescriptor& channel = thz::channel_by_id(66);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            thz::max_range_m(profile, profile.default_mcs, channel));
    }
}
BENCHMARK(BM_MaxRange);

void BM_SimulateSession(benchmark::State& state) {
    const thz::UseCaseProfile& kiosk = thz::profile_by_name("kiosk");
    thz::SessionConfig cfg;
    cfg.link = kiosk.make_link(thz::channel_by_id(68), 0.3);
    cfg.payload_bytes_total = static_cast<uint64_t>(state.range(0));
    cfg.frame_payload_bytes = 1'048'576;
    for (auto _ : state) {
        benchmark::DoNotOptimize(thz::simulate_session(cfg, 1));
    }
}
BENCHMARK(BM_SimulateSession)->Arg(100'000'000);

} // namespace

BENCHMARK_MAIN();
