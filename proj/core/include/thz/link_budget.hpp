#pragma once

#include "thz/channel_plan.hpp"
#include "thz/mcs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace thz {

/// Symbol rate of a channel: multiplier x 1.76 GBd.
double symbol_rate_gbd(const ChannelDescriptor& channel);

/// PHY-layer data rate in Gbit/s: symbol rate x bits/symbol x code rate.
double data_rate_gbps(const Mcs& mcs, const ChannelDescriptor& channel);

/// Free-space path loss, 20 log10(4 pi d f / c).
double fspl_db(double carrier_ghz, double distance_m);

/// Thermal noise floor: -174 dBm/Hz + 10 log10(B) + NF.
double noise_floor_dbm(double bandwidth_ghz, double noise_figure_db);

/// Transmitter EVM in dB for the given MCS, within [-22, -3].
double evm_db(const Mcs& mcs);

/// SNR after folding in the transmitter EVM noise floor:
/// -10 log10(10^(-snr/10) + 10^(evm/10)).
double effective_snr_db(double snr_db, double evm_db);

/// Calibrated SNR threshold (dB) above which the link is error-free.
double required_snr_db(const Mcs& mcs);

/// Receiver sensitivity: noise floor + required SNR.
double sensitivity_dbm(const Mcs& mcs, double bandwidth_ghz, double noise_figure_db);

struct LinkConfig {
    double tx_power_dbm = 0.0;
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    double distance_m = 1.0;
    ChannelDescriptor channel;
    Mcs mcs;
    double noise_figure_db = 8.0;
    double carrier_ghz = 300.0;
    double absorption_db_per_km = 0.0;
};

/// Received power after gains, FSPL and molecular absorption.
double rx_power_dbm(const LinkConfig& link);

/// Raw SNR at the receiver (before EVM).
double link_snr_db(const LinkConfig& link);

struct Feasibility {
    bool feasible = false;
    double margin_db = 0.0; // effective SNR minus required SNR
};
Feasibility link_feasible(const LinkConfig& link);

enum class UseCase { FRONTHAUL_BACKHAUL, DATA_CENTER, KIOSK, INTRA_DEVICE };

/// One column of the numerical-study parameter table, plus the default
/// MCS used in the range evaluation.
struct UseCaseProfile {
    UseCase use_case = UseCase::FRONTHAUL_BACKHAUL;
    std::string name;
    double tx_power_dbm = 0.0;
    double tx_gain_db = 0.0;
    double rx_gain_db = 0.0;
    double carrier_ghz = 300.0;
    double noise_figure_db = 8.0;
    double absorption_db_per_km = 0.0;
    Mcs default_mcs;

    LinkConfig make_link(const ChannelDescriptor& channel, double distance_m) const;
    LinkConfig make_link(const ChannelDescriptor& channel, double distance_m,
                         const Mcs& mcs) const;
};

const std::vector<UseCaseProfile>& use_case_profiles();
const UseCaseProfile& profile_by_name(const std::string& name);

struct RangeResult {
    double range_m = 0.0;
    bool feasible = false; // false: infeasible at any distance
};

/// Largest distance at which the link stays feasible, by bisection to 1 mm.
/// Throws ValidationError if min_rate_gbps is given and the MCS/channel
/// pair cannot attain it.
RangeResult max_range_m(const UseCaseProfile& profile, const Mcs& mcs,
                        const ChannelDescriptor& channel,
                        std::optional<double> min_rate_gbps = std::nullopt);

/// Highest-rate feasible MCS for the link's PHY mode; ties go to the
/// lower modulation order. Throws NoFeasibleMcs if none closes the budget.
Mcs best_mcs(const LinkConfig& link, PhyMode mode = PhyMode::THZ_SC);

} // namespace thz
