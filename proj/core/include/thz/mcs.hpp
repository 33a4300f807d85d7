#pragma once

#include <string>
#include <vector>

namespace thz {

enum class PhyMode { THZ_SC, THZ_OOK };

enum class Modulation { OOK, BPSK, QPSK, PSK8, APSK8, QAM16, QAM64 };

enum class Fec { LDPC_14_15, LDPC_11_15, RS_240_224 };

/// Modulation and coding scheme. THZ_SC pairs the six linear modulations
/// with one of the two LDPC codes; THZ_OOK pairs OOK with RS or either LDPC.
struct Mcs {
    PhyMode mode = PhyMode::THZ_SC;
    Modulation modulation = Modulation::BPSK;
    Fec fec = Fec::LDPC_11_15;

    bool operator==(const Mcs&) const = default;
};

int bits_per_symbol(Modulation m);

/// Code rate as an exact fraction.
struct CodeRate {
    int num = 1;
    int den = 1;
    double value() const { return static_cast<double>(num) / den; }
};
CodeRate code_rate(Fec fec);

/// True iff the modulation/FEC pair is allowed in the MCS's PHY mode.
bool is_valid(const Mcs& mcs);

/// BPSK and QPSK are mandatory in THZ_SC; OOK with RS is mandatory in THZ_OOK.
bool is_mandatory(const Mcs& mcs);

/// All 15 valid combinations (12 SC + 3 OOK), SC first, ascending
/// modulation order, 11/15 before 14/15.
const std::vector<Mcs>& all_mcs();

/// Valid MCSs of one PHY mode, same order as all_mcs().
std::vector<Mcs> mcs_for_mode(PhyMode mode);

/// 4-bit (SC) or 2-bit (OOK) MCS field value for the PHY header.
int mcs_index(const Mcs& mcs);
Mcs mcs_from_index(PhyMode mode, int index);

std::string to_string(Modulation m);
std::string to_string(Fec f);
std::string to_string(const Mcs& mcs);

/// Parses names like "bpsk-11/15", "64qam-14/15", "ook-rs". Throws
/// ValidationError on unknown names.
Mcs parse_mcs(const std::string& name);

} // namespace thz
