#pragma once

#include <array>
#include <cstdint>

namespace thz {

// The channelization covers 252.72--321.84 GHz. All frequencies are stored
// as integer multiples of 0.01 GHz so that channel edges are exact.
inline constexpr int64_t kBandLowCentiGhz = 25272;
inline constexpr int64_t kBandHighCentiGhz = 32184;
inline constexpr int64_t kBaseBandwidthCentiGhz = 216; // 2.16 GHz
inline constexpr int kNumChannels = 69;
inline constexpr int kNumBandwidthClasses = 8;
inline constexpr int kDefaultChannelId = 41;
inline constexpr int kFullBandChannelId = 69;

/// One entry of the 69-channel plan.
struct ChannelDescriptor {
    int id = 0;                 // 1..69
    int multiplier = 0;         // bandwidth = multiplier * 2.16 GHz
    int64_t center_cghz = 0;    // center frequency, centi-GHz
    int64_t bandwidth_cghz = 0; // bandwidth, centi-GHz

    double center_ghz() const { return static_cast<double>(center_cghz) / 100.0; }
    double bandwidth_ghz() const { return static_cast<double>(bandwidth_cghz) / 100.0; }
    int64_t low_edge_cghz() const { return center_cghz - bandwidth_cghz / 2; }
    int64_t high_edge_cghz() const { return center_cghz + bandwidth_cghz / 2; }

    bool operator==(const ChannelDescriptor&) const = default;
};

/// The full plan, ids ascending. Channels are grouped by bandwidth class
/// (multipliers 1, 2, 4, 6, 8, 12, 24, 32), each class tiling the band
/// contiguously from the low edge.
const std::array<ChannelDescriptor, kNumChannels>& build_plan();

/// Lookup by CHNL_ID. Throws NoSuchChannel for ids outside 1..69.
const ChannelDescriptor& channel_by_id(int id);

/// True iff the open frequency intervals of the two channels intersect.
/// Adjacent tiles sharing only an edge do not overlap.
bool overlaps(const ChannelDescriptor& a, const ChannelDescriptor& b);

} // namespace thz
