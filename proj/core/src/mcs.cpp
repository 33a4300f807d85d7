#include "thz/mcs.hpp"

#include "thz/errors.hpp"

#include <algorithm>
#include <cctype>

namespace thz {

int bits_per_symbol(Modulation m) {
    switch (m) {
        case Modulation::OOK: return 1;
        case Modulation::BPSK: return 1;
        case Modulation::QPSK: return 2;
        case Modulation::PSK8: return 3;
        case Modulation::APSK8: return 3;
        case Modulation::QAM16: return 4;
        case Modulation::QAM64: return 6;
    }
    return 0;
}

CodeRate code_rate(Fec fec) {
    switch (fec) {
        case Fec::LDPC_14_15: return {1344, 1440};
        case Fec::LDPC_11_15: return {1056, 1440};
        case Fec::RS_240_224: return {224, 240};
    }
    return {1, 1};
}

bool is_valid(const Mcs& mcs) {
    if (mcs.mode == PhyMode::THZ_OOK) return mcs.modulation == Modulation::OOK;
    return mcs.modulation != Modulation::OOK && mcs.fec != Fec::RS_240_224;
}

bool is_mandatory(const Mcs& mcs) {
    if (!is_valid(mcs)) return false;
    if (mcs.mode == PhyMode::THZ_OOK) return mcs.fec == Fec::RS_240_224;
    return mcs.modulation == Modulation::BPSK || mcs.modulation == Modulation::QPSK;
}

const std::vector<Mcs>& all_mcs() {
    static const std::vector<Mcs> table = [] {
        std::vector<Mcs> v;
        const Modulation sc_mods[] = {Modulation::BPSK, Modulation::QPSK, Modulation::PSK8,
                                      Modulation::APSK8, Modulation::QAM16, Modulation::QAM64};
        for (Modulation m : sc_mods)
            for (Fec f : {Fec::LDPC_11_15, Fec::LDPC_14_15})
                v.push_back({PhyMode::THZ_SC, m, f});
        for (Fec f : {Fec::RS_240_224, Fec::LDPC_11_15, Fec::LDPC_14_15})
            v.push_back({PhyMode::THZ_OOK, Modulation::OOK, f});
        return v;
    }();
    return table;
}

std::vector<Mcs> mcs_for_mode(PhyMode mode) {
    std::vector<Mcs> v;
    for (const Mcs& m : all_mcs())
        if (m.mode == mode) v.push_back(m);
    return v;
}

int mcs_index(const Mcs& mcs) {
    const auto list = mcs_for_mode(mcs.mode);
    for (size_t i = 0; i < list.size(); ++i)
        if (list[i] == mcs) return static_cast<int>(i);
    throw ValidationError("invalid MCS combination");
}

Mcs mcs_from_index(PhyMode mode, int index) {
    const auto list = mcs_for_mode(mode);
    if (index < 0 || index >= static_cast<int>(list.size()))
        throw ValidationError("MCS index " + std::to_string(index) + " out of range");
    return list[index];
}

std::string to_string(Modulation m) {
    switch (m) {
        case Modulation::OOK: return "ook";
        case Modulation::BPSK: return "bpsk";
        case Modulation::QPSK: return "qpsk";
        case Modulation::PSK8: return "8psk";
        case Modulation::APSK8: return "8apsk";
        case Modulation::QAM16: return "16qam";
        case Modulation::QAM64: return "64qam";
    }
    return "?";
}

std::string to_string(Fec f) {
    switch (f) {
        case Fec::LDPC_14_15: return "14/15";
        case Fec::LDPC_11_15: return "11/15";
        case Fec::RS_240_224: return "rs";
    }
    return "?";
}

std::string to_string(const Mcs& mcs) {
    return to_string(mcs.modulation) + "-" + to_string(mcs.fec);
}

Mcs parse_mcs(const std::string& name) {
    std::string s;
    for (char c : name) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (const Mcs& m : all_mcs())
        if (to_string(m) == s) return m;
    throw ValidationError("unknown MCS '" + name + "'");
}

} // namespace thz
