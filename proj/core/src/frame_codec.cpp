#include "thz/frame_codec.hpp"

#include "thz/link_budget.hpp"

namespace thz {

namespace {

constexpr uint8_t kLongPreambleTag = 0xA7;
constexpr uint8_t kShortPreambleTag = 0x5B;

constexpr int kHeaderBlockBits = 2 * kEhDataBits; // headers + HCS + stuff

int phy_header_bits(PhyMode mode) {
    return mode == PhyMode::THZ_SC ? kScPhyHeaderBits : kOokPhyHeaderBits;
}

int mcs_field_bits(PhyMode mode) { return mode == PhyMode::THZ_SC ? 4 : 2; }

} // namespace

void BitBuffer::push_bit(bool b) {
    if (nbits_ % 8 == 0) bytes_.push_back(0);
    if (b) bytes_.back() |= static_cast<uint8_t>(0x80u >> (nbits_ % 8));
    ++nbits_;
}

void BitBuffer::push_uint(uint64_t value, int width) {
    for (int i = width - 1; i >= 0; --i) push_bit((value >> i) & 1u);
}

void BitBuffer::push_bytes(const std::vector<uint8_t>& bytes) {
    for (uint8_t b : bytes) push_uint(b, 8);
}

bool BitBuffer::bit(size_t i) const {
    return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
}

void BitBuffer::flip_bit(size_t i) {
    bytes_[i / 8] ^= static_cast<uint8_t>(0x80u >> (i % 8));
}

BitBuffer BitBuffer::from_bytes(const std::vector<uint8_t>& bytes) {
    BitBuffer buf;
    buf.bytes_ = bytes;
    buf.nbits_ = bytes.size() * 8;
    return buf;
}

uint64_t BitReader::read_uint(int width) {
    if (remaining() < static_cast<size_t>(width))
        throw FrameError(FrameError::Kind::Truncated, "bit stream ends mid-field");
    uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (buf_->bit(pos_++) ? 1u : 0u);
    return v;
}

uint16_t crc16(const BitBuffer& bits) {
    uint16_t crc = 0xFFFF;
    for (size_t i = 0; i < bits.size(); ++i) {
        const bool msb = (crc >> 15) & 1u;
        crc = static_cast<uint16_t>(crc << 1);
        if (msb != bits.bit(i)) crc ^= 0x1021;
    }
    return crc;
}

uint16_t crc16_bytes(const std::vector<uint8_t>& bytes) {
    BitBuffer buf;
    buf.push_bytes(bytes);
    return crc16(buf);
}

// (72,64) extended Hamming: codeword index 0 carries the overall parity,
// indices 1..71 are Hamming positions; data fills the non-power-of-two
// positions in ascending order.
namespace {

bool is_pow2(int x) { return (x & (x - 1)) == 0; }

} // namespace

std::bitset<kEhCodewordBits> eh_encode(const std::bitset<kEhDataBits>& block) {
    std::bitset<kEhCodewordBits> cw;
    int data_idx = 0;
    for (int pos = 1; pos <= 71; ++pos) {
        if (is_pow2(pos)) continue;
        cw[pos] = block[data_idx++];
    }
    for (int p = 0; p < 7; ++p) {
        const int ppos = 1 << p;
        bool parity = false;
        for (int pos = 1; pos <= 71; ++pos)
            if (!is_pow2(pos) && (pos & ppos) && cw[pos]) parity = !parity;
        cw[ppos] = parity;
    }
    bool overall = false;
    for (int pos = 1; pos <= 71; ++pos)
        if (cw[pos]) overall = !overall;
    cw[0] = overall;
    return cw;
}

EhDecodeResult eh_decode(const std::bitset<kEhCodewordBits>& codeword) {
    std::bitset<kEhCodewordBits> cw = codeword;
    int syndrome = 0;
    bool overall = cw[0];
    for (int pos = 1; pos <= 71; ++pos) {
        if (!cw[pos]) continue;
        syndrome ^= pos;
        overall = !overall;
    }

    EhDecodeResult result;
    if (syndrome == 0 && !overall) {
        result.corrected = 0;
    } else if (overall) {
        // odd number of errors; assume one and correct it
        if (syndrome > 71) return result; // points outside the shortened code
        if (syndrome > 0) cw[syndrome] = !cw[syndrome];
        // syndrome 0 with odd parity: the overall parity bit itself flipped
        result.corrected = 1;
    } else {
        return result; // even-weight error, detected uncorrectable
    }

    result.ok = true;
    int data_idx = 0;
    for (int pos = 1; pos <= 71; ++pos) {
        if (is_pow2(pos)) continue;
        result.block[data_idx++] = cw[pos];
    }
    return result;
}

bool operator==(const Frame& a, const Frame& b) {
    return a.preamble == b.preamble && a.phy_header.mode == b.phy_header.mode &&
           a.phy_header.mcs_index == b.phy_header.mcs_index &&
           a.phy_header.frame_length_bytes == b.phy_header.frame_length_bytes &&
           a.mac_header == b.mac_header && a.payload == b.payload;
}

namespace {

BitBuffer pack_headers(const Frame& frame) {
    BitBuffer hb;
    hb.push_uint(static_cast<uint64_t>(frame.phy_header.mcs_index),
                 mcs_field_bits(frame.phy_header.mode));
    hb.push_uint(frame.phy_header.frame_length_bytes, 22);
    hb.push_uint(0, 6); // reserved
    const MacHeader& mac = frame.mac_header;
    hb.push_uint(static_cast<uint64_t>(mac.frame_type), 3);
    hb.push_uint(mac.ack_policy ? 1 : 0, 1);
    hb.push_uint(mac.pairnet_id, 16);
    hb.push_uint(mac.src_id, 8);
    hb.push_uint(mac.dest_id, 8);
    hb.push_uint(mac.seq_num, 12);
    hb.push_uint(0, 16); // reserved
    return hb;
}

} // namespace

BitBuffer encode_frame(const Frame& frame) {
    const PhyHeader& phy = frame.phy_header;
    if (phy.frame_length_bytes < kMinFrameLengthBytes ||
        phy.frame_length_bytes > kMaxFrameLengthBytes)
        throw FrameError(FrameError::Kind::LengthOutOfRange,
                         "frame length " + std::to_string(phy.frame_length_bytes));
    if (frame.payload.size() != phy.frame_length_bytes)
        throw FrameError(FrameError::Kind::LengthMismatch,
                         "payload size does not match the PHY length field");

    BitBuffer header = pack_headers(frame);
    const uint16_t hcs = crc16(header);
    header.push_uint(hcs, kHcsBits);
    while (header.size() % kEhDataBits != 0) header.push_bit(false); // stuff bits

    BitBuffer out;
    out.push_uint(frame.preamble == Preamble::LONG ? kLongPreambleTag : kShortPreambleTag,
                  kPreambleTagBits);
    for (int b = 0; b < kHeaderBlockBits / kEhDataBits; ++b) {
        std::bitset<kEhDataBits> block;
        for (int i = 0; i < kEhDataBits; ++i)
            block[i] = header.bit(static_cast<size_t>(b) * kEhDataBits + i);
        const auto cw = eh_encode(block);
        for (int i = 0; i < kEhCodewordBits; ++i) out.push_bit(cw[i]);
    }
    out.push_bytes(frame.payload);
    return out;
}

DecodedFrame decode_frame(const BitBuffer& bits, PhyMode mode) {
    BitReader reader(bits);

    const uint64_t tag = reader.read_uint(kPreambleTagBits);
    Preamble preamble;
    if (tag == kLongPreambleTag)
        preamble = Preamble::LONG;
    else if (tag == kShortPreambleTag)
        preamble = Preamble::SHORT;
    else
        throw FrameError(FrameError::Kind::BadPreamble, "unknown preamble tag");

    BitBuffer header;
    int corrected = 0;
    for (int b = 0; b < kHeaderBlockBits / kEhDataBits; ++b) {
        std::bitset<kEhCodewordBits> cw;
        for (int i = 0; i < kEhCodewordBits; ++i) cw[i] = reader.read_uint(1);
        const EhDecodeResult dec = eh_decode(cw);
        if (!dec.ok)
            throw FrameError(FrameError::Kind::EhFailure, "uncorrectable header codeword");
        corrected += dec.corrected;
        for (int i = 0; i < kEhDataBits; ++i) header.push_bit(dec.block[i]);
    }

    BitReader hr(header);
    DecodedFrame out;
    Frame& frame = out.frame;
    out.corrected_bits = corrected;
    frame.preamble = preamble;
    frame.phy_header.mode = mode;
    frame.phy_header.mcs_index = static_cast<int>(hr.read_uint(mcs_field_bits(mode)));
    frame.phy_header.frame_length_bytes = static_cast<uint32_t>(hr.read_uint(22));
    const uint64_t phy_reserved = hr.read_uint(6);
    frame.mac_header.frame_type = static_cast<FrameType>(hr.read_uint(3));
    frame.mac_header.ack_policy = hr.read_uint(1) != 0;
    frame.mac_header.pairnet_id = static_cast<uint16_t>(hr.read_uint(16));
    frame.mac_header.src_id = static_cast<uint8_t>(hr.read_uint(8));
    frame.mac_header.dest_id = static_cast<uint8_t>(hr.read_uint(8));
    frame.mac_header.seq_num = static_cast<uint16_t>(hr.read_uint(12));
    const uint64_t mac_reserved = hr.read_uint(16);
    const uint16_t hcs = static_cast<uint16_t>(hr.read_uint(kHcsBits));

    // residual-corruption checks the EH layer cannot make: stuff/reserved
    // bits must still be zero and the HCS must match
    uint64_t stuff = 0;
    while (hr.remaining() > 0) stuff |= hr.read_uint(1);
    BitBuffer covered = pack_headers(frame);
    if (phy_reserved != 0 || mac_reserved != 0 || stuff != 0 || crc16(covered) != hcs)
        throw FrameError(FrameError::Kind::HcsFailure, "header check sequence mismatch");

    const uint32_t len = frame.phy_header.frame_length_bytes;
    if (len < kMinFrameLengthBytes || len > kMaxFrameLengthBytes)
        throw FrameError(FrameError::Kind::LengthOutOfRange,
                         "length field " + std::to_string(len));

    if (reader.remaining() < static_cast<size_t>(len) * 8)
        throw FrameError(FrameError::Kind::Truncated, "payload shorter than length field");
    frame.payload.resize(len);
    for (uint32_t i = 0; i < len; ++i)
        frame.payload[i] = static_cast<uint8_t>(reader.read_uint(8));
    if (reader.remaining() >= 8)
        throw FrameError(FrameError::Kind::Truncated, "trailing data after payload");
    return out;
}

double frame_airtime_s(Preamble preamble, size_t payload_bytes, const Mcs& mcs,
                       const ChannelDescriptor& channel) {
    const int preamble_symbols =
        preamble == Preamble::LONG ? kLongPreambleSymbols : kShortPreambleSymbols;
    const double bps = bits_per_symbol(mcs.modulation);
    const CodeRate r = code_rate(mcs.fec);
    const double header_symbols = kHeaderOnAirBits / bps;
    const double payload_symbols =
        static_cast<double>(payload_bytes) * 8.0 / (bps * r.value());
    const double symbol_rate_hz = symbol_rate_gbd(channel) * 1e9;
    return (preamble_symbols + header_symbols + payload_symbols) / symbol_rate_hz;
}

double frame_airtime_s(const Frame& frame, const Mcs& mcs,
                       const ChannelDescriptor& channel) {
    return frame_airtime_s(frame.preamble, frame.payload.size(), mcs, channel);
}

} // namespace thz
