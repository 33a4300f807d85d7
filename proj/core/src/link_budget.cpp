#include "thz/link_budget.hpp"

#include "thz/errors.hpp"

#include <cmath>

namespace thz {

namespace {

constexpr double kSpeedOfLight = 299792458.0;
constexpr double kBaseSymbolRateGbd = 1.76;

// Pre-FEC BER operating points used to derive the SNR thresholds: the
// low-rate 11/15 LDPC decodes from a raw BER of 0.10, the high-rate
// 14/15 LDPC and the (240,224) RS from 0.08.
enum class RateClass { LOW, HIGH };

RateClass rate_class(Fec fec) {
    return fec == Fec::LDPC_11_15 ? RateClass::LOW : RateClass::HIGH;
}

// Calibrated SNR thresholds (Es/N0, dB), frozen from the Monte-Carlo AWGN
// oracle (tools/ber_oracle, 1e7 symbols per evaluation) after shifting the
// whole table by one constant so BPSK+11/15 sits at 5.65 dB, i.e. the
// -67 dBm sensitivity anchor at the 2.16 GHz noise floor.
double threshold_table(Modulation mod, RateClass rc) {
    switch (mod) {
        case Modulation::OOK: return rc == RateClass::LOW ? 5.65 : 6.45;
        case Modulation::BPSK: return rc == RateClass::LOW ? 5.65 : 6.45;
        case Modulation::QPSK: return rc == RateClass::LOW ? 8.66 : 9.46;
        case Modulation::PSK8: return rc == RateClass::LOW ? 12.32 : 13.31;
        case Modulation::APSK8: return rc == RateClass::LOW ? 12.32 : 13.31;
        case Modulation::QAM16: return rc == RateClass::LOW ? 14.42 : 15.40;
        case Modulation::QAM64: return rc == RateClass::LOW ? 19.33 : 20.52;
    }
    return 0.0;
}

} // namespace

double symbol_rate_gbd(const ChannelDescriptor& channel) {
    return channel.multiplier * kBaseSymbolRateGbd;
}

double data_rate_gbps(const Mcs& mcs, const ChannelDescriptor& channel) {
    const CodeRate r = code_rate(mcs.fec);
    return symbol_rate_gbd(channel) * bits_per_symbol(mcs.modulation) * r.num / r.den;
}

double fspl_db(double carrier_ghz, double distance_m) {
    const double f_hz = carrier_ghz * 1e9;
    return 20.0 * std::log10(4.0 * M_PI * distance_m * f_hz / kSpeedOfLight);
}

double noise_floor_dbm(double bandwidth_ghz, double noise_figure_db) {
    return -174.0 + 10.0 * std::log10(bandwidth_ghz * 1e9) + noise_figure_db;
}

double evm_db(const Mcs& mcs) {
    switch (mcs.modulation) {
        case Modulation::OOK: return -8.0;
        case Modulation::BPSK: return -8.0;
        case Modulation::QPSK: return -11.0;
        case Modulation::PSK8: return -15.0;
        case Modulation::APSK8: return -15.0;
        case Modulation::QAM16: return -19.0;
        case Modulation::QAM64: return -22.0;
    }
    return -3.0;
}

double effective_snr_db(double snr_db, double evm_db) {
    return -10.0 * std::log10(std::pow(10.0, -snr_db / 10.0) + std::pow(10.0, evm_db / 10.0));
}

double required_snr_db(const Mcs& mcs) {
    if (!is_valid(mcs)) throw ValidationError("invalid MCS");
    return threshold_table(mcs.modulation, rate_class(mcs.fec));
}

double sensitivity_dbm(const Mcs& mcs, double bandwidth_ghz, double noise_figure_db) {
    return noise_floor_dbm(bandwidth_ghz, noise_figure_db) + required_snr_db(mcs);
}

double rx_power_dbm(const LinkConfig& link) {
    return link.tx_power_dbm + link.tx_gain_db + link.rx_gain_db -
           fspl_db(link.carrier_ghz, link.distance_m) -
           link.absorption_db_per_km * link.distance_m / 1000.0;
}

double link_snr_db(const LinkConfig& link) {
    return rx_power_dbm(link) -
           noise_floor_dbm(link.channel.bandwidth_ghz(), link.noise_figure_db);
}

Feasibility link_feasible(const LinkConfig& link) {
    const double eff = effective_snr_db(link_snr_db(link), evm_db(link.mcs));
    const double margin = eff - required_snr_db(link.mcs);
    return {margin >= 0.0, margin};
}

LinkConfig UseCaseProfile::make_link(const ChannelDescriptor& channel,
                                     double distance_m) const {
    return make_link(channel, distance_m, default_mcs);
}

LinkConfig UseCaseProfile::make_link(const ChannelDescriptor& channel, double distance_m,
                                     const Mcs& mcs) const {
    LinkConfig link;
    link.tx_power_dbm = tx_power_dbm;
    link.tx_gain_db = tx_gain_db;
    link.rx_gain_db = rx_gain_db;
    link.distance_m = distance_m;
    link.channel = channel;
    link.mcs = mcs;
    link.noise_figure_db = noise_figure_db;
    link.carrier_ghz = carrier_ghz;
    link.absorption_db_per_km = absorption_db_per_km;
    return link;
}

const std::vector<UseCaseProfile>& use_case_profiles() {
    static const std::vector<UseCaseProfile> profiles = [] {
        const Mcs qam64{PhyMode::THZ_SC, Modulation::QAM64, Fec::LDPC_14_15};
        const Mcs apsk8{PhyMode::THZ_SC, Modulation::APSK8, Fec::LDPC_14_15};
        std::vector<UseCaseProfile> v;
        v.push_back({UseCase::FRONTHAUL_BACKHAUL, "fronthaul_backhaul", 25.0, 30.0, 30.0,
                     300.0, 8.0, 2.6, qam64});
        v.push_back({UseCase::DATA_CENTER, "data_center", 10.0, 30.0, 30.0, 300.0, 8.0, 0.0,
                     qam64});
        v.push_back({UseCase::KIOSK, "kiosk", 0.0, 24.0, 12.0, 300.0, 8.0, 2.6, apsk8});
        v.push_back({UseCase::INTRA_DEVICE, "intra_device", 0.0, 6.0, 6.0, 300.0, 8.0, 0.0,
                     apsk8});
        return v;
    }();
    return profiles;
}

const UseCaseProfile& profile_by_name(const std::string& name) {
    for (const UseCaseProfile& p : use_case_profiles())
        if (p.name == name) return p;
    throw ValidationError("unknown profile '" + name + "'");
}

RangeResult max_range_m(const UseCaseProfile& profile, const Mcs& mcs,
                        const ChannelDescriptor& channel,
                        std::optional<double> min_rate_gbps) {
    if (min_rate_gbps && data_rate_gbps(mcs, channel) < *min_rate_gbps)
        throw ValidationError("MCS/channel pair cannot attain the requested rate");

    auto feasible_at = [&](double d) {
        return link_feasible(profile.make_link(channel, d, mcs)).feasible;
    };

    constexpr double kMinDistance = 1e-3; // 1 mm
    if (!feasible_at(kMinDistance)) return {0.0, false};

    double lo = kMinDistance, hi = 2e-3;
    while (feasible_at(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8) return {lo, true}; // loss model never fails; cap the search
    }
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (feasible_at(mid) ? lo : hi) = mid;
    }
    return {lo, true};
}

Mcs best_mcs(const LinkConfig& link, PhyMode mode) {
    bool found = false;
    Mcs best;
    double best_rate = -1.0;
    for (const Mcs& mcs : mcs_for_mode(mode)) {
        LinkConfig candidate = link;
        candidate.mcs = mcs;
        if (!link_feasible(candidate).feasible) continue;
        const double rate = data_rate_gbps(mcs, link.channel);
        // strict comparison keeps the lower modulation order on rate ties
        if (!found || rate > best_rate) {
            found = true;
            best = mcs;
            best_rate = rate;
        }
    }
    if (!found) throw NoFeasibleMcs();
    return best;
}

} // namespace thz
