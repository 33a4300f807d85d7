#pragma once

#include "thz/channel_plan.hpp"
#include "thz/errors.hpp"
#include "thz/mcs.hpp"

#include <bitset>
#include <cstdint>
#include <vector>

namespace thz {

inline constexpr uint32_t kMinFrameLengthBytes = 2048;
inline constexpr uint32_t kMaxFrameLengthBytes = 2'099'200;

inline constexpr int kScPhyHeaderBits = 32;  // MCS(4) LENGTH(22) RESERVED(6)
inline constexpr int kOokPhyHeaderBits = 30; // MCS(2) LENGTH(22) RESERVED(6)
inline constexpr int kMacHeaderBits = 64;
inline constexpr int kHcsBits = 16;
inline constexpr int kEhDataBits = 64;
inline constexpr int kEhCodewordBits = 72;
inline constexpr int kHeaderOnAirBits = 2 * kEhCodewordBits; // 144 for both modes
inline constexpr int kPreambleTagBits = 8;

inline constexpr int kLongPreambleSymbols = 2048;  // PSP frames
inline constexpr int kShortPreambleSymbols = 1024; // PAP frames

/// Growable MSB-first bit string; the serialized frame representation.
class BitBuffer {
public:
    BitBuffer() = default;

    void push_bit(bool b);
    void push_uint(uint64_t value, int width); // MSB first
    void push_bytes(const std::vector<uint8_t>& bytes);

    bool bit(size_t i) const;
    void flip_bit(size_t i);
    size_t size() const { return nbits_; }

    /// Packed bytes, zero-padded to a byte boundary. This is the on-disk
    /// frame file format.
    std::vector<uint8_t> to_bytes() const { return bytes_; }
    static BitBuffer from_bytes(const std::vector<uint8_t>& bytes);

    bool operator==(const BitBuffer&) const = default;

private:
    std::vector<uint8_t> bytes_;
    size_t nbits_ = 0;
};

/// Sequential reader over a BitBuffer.
class BitReader {
public:
    explicit BitReader(const BitBuffer& buf) : buf_(&buf) {}
    uint64_t read_uint(int width); // throws FrameError(Truncated) on underrun
    size_t remaining() const { return buf_->size() - pos_; }

private:
    const BitBuffer* buf_;
    size_t pos_ = 0;
};

class FrameError : public Error {
public:
    enum class Kind { LengthMismatch, LengthOutOfRange, Truncated, HcsFailure, EhFailure,
                      BadPreamble };
    FrameError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// CRC-16/CCITT-FALSE over a bit string: poly 0x1021, init 0xFFFF,
/// MSB first, no reflection, no final XOR.
uint16_t crc16(const BitBuffer& bits);
uint16_t crc16_bytes(const std::vector<uint8_t>& bytes);

/// Extended Hamming (72,64) SECDED codeword. Bit 0 of the data block is
/// the first transmitted data bit; codeword bits are in transmission order.
std::bitset<kEhCodewordBits> eh_encode(const std::bitset<kEhDataBits>& block);

struct EhDecodeResult {
    bool ok = false; // false: detected uncorrectable (double-bit) error
    std::bitset<kEhDataBits> block;
    int corrected = 0;
};
EhDecodeResult eh_decode(const std::bitset<kEhCodewordBits>& codeword);

enum class Preamble { LONG, SHORT };
enum class FrameType : uint8_t {
    BEACON = 0,
    ASSOC_REQ = 1,
    ASSOC_RSP = 2,
    DATA = 3,
    ACK = 4,
    PROBE_REQ = 5,
    DISASSOC_REQ = 6,
};

struct PhyHeader {
    PhyMode mode = PhyMode::THZ_SC;
    int mcs_index = 0;               // 4 bits (SC) or 2 bits (OOK)
    uint32_t frame_length_bytes = 0; // 22 bits, payload length
};

struct MacHeader {
    FrameType frame_type = FrameType::DATA; // 3 bits
    bool ack_policy = false;                // 1 bit
    uint16_t pairnet_id = 0;                // 16 bits
    uint8_t src_id = 0;                     // 8 bits
    uint8_t dest_id = 0;                    // 8 bits
    uint16_t seq_num = 0;                   // 12 bits
                                            // + 16 reserved zero bits

    bool operator==(const MacHeader&) const = default;
};

struct Frame {
    Preamble preamble = Preamble::SHORT;
    PhyHeader phy_header;
    MacHeader mac_header;
    std::vector<uint8_t> payload;
};

bool operator==(const Frame& a, const Frame& b);

/// Serializes a frame to its on-air bit sequence: preamble tag, two
/// EH(72,64) codewords protecting PHY header + MAC header + HCS + stuff
/// bits, then the payload MSB first.
BitBuffer encode_frame(const Frame& frame);

struct DecodedFrame {
    Frame frame;
    int corrected_bits = 0; // single-bit header errors fixed by the EH layer
};
DecodedFrame decode_frame(const BitBuffer& bits, PhyMode mode);

/// On-air duration. Header bits ride at the frame's modulation but are not
/// payload-FEC coded; payload bits are expanded by the code rate.
double frame_airtime_s(Preamble preamble, size_t payload_bytes, const Mcs& mcs,
                       const ChannelDescriptor& channel);
double frame_airtime_s(const Frame& frame, const Mcs& mcs, const ChannelDescriptor& channel);

} // namespace thz
