#include "thz/channel_plan.hpp"

#include "thz/errors.hpp"

namespace thz {

namespace {

constexpr std::array<int, kNumBandwidthClasses> kMultipliers = {1, 2, 4, 6, 8, 12, 24, 32};

std::array<ChannelDescriptor, kNumChannels> make_plan() {
    std::array<ChannelDescriptor, kNumChannels> plan{};
    int id = 1;
    for (int m : kMultipliers) {
        const int count = 32 / m; // tiles of width m*2.16 fitting in 69.12 GHz
        const int64_t bw = m * kBaseBandwidthCentiGhz;
        for (int k = 0; k < count; ++k) {
            ChannelDescriptor& ch = plan[id - 1];
            ch.id = id;
            ch.multiplier = m;
            ch.bandwidth_cghz = bw;
            ch.center_cghz = kBandLowCentiGhz + k * bw + bw / 2;
            ++id;
        }
    }
    return plan;
}

} // namespace

const std::array<ChannelDescriptor, kNumChannels>& build_plan() {
    static const std::array<ChannelDescriptor, kNumChannels> plan = make_plan();
    return plan;
}

const ChannelDescriptor& channel_by_id(int id) {
    if (id < 1 || id > kNumChannels) throw NoSuchChannel(id);
    return build_plan()[id - 1];
}

bool overlaps(const ChannelDescriptor& a, const ChannelDescriptor& b) {
    return a.low_edge_cghz() < b.high_edge_cghz() && b.low_edge_cghz() < a.high_edge_cghz();
}

} // namespace thz
