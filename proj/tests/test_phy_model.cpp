#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "thz/channel_plan.hpp"
#include "thz/errors.hpp"
#include "thz/link_budget.hpp"
#include "thz/mcs.hpp"

#include <cmath>
#include <set>

using namespace thz;

namespace {

Mcs mk(PhyMode mode, Modulation mod, Fec fec) { return {mode, mod, fec}; }

const Mcs kOokRs = mk(PhyMode::THZ_OOK, Modulation::OOK, Fec::RS_240_224);
const Mcs kBpskLow = mk(PhyMode::THZ_SC, Modulation::BPSK, Fec::LDPC_11_15);
const Mcs kQam64High = mk(PhyMode::THZ_SC, Modulation::QAM64, Fec::LDPC_14_15);

// Truncate to 2 decimals the way the displayed rates are quoted.
double trunc2(double v) { return std::floor(v * 100.0) / 100.0; }

} // namespace

TEST_CASE("MCS catalogue: 12 SC + 3 OOK combinations, all valid, all distinct") {
    const auto& all = all_mcs();
    REQUIRE(all.size() == 15);
    int sc = 0, ook = 0;
    std::set<std::string> names;
    for (const Mcs& m : all) {
        CHECK(is_valid(m));
        (m.mode == PhyMode::THZ_SC ? sc : ook)++;
        names.insert(to_string(m));
    }
    CHECK(sc == 12);
    CHECK(ook == 3);
    CHECK(names.size() == 15);
}

TEST_CASE("invalid mode/modulation/FEC pairings are rejected") {
    CHECK_FALSE(is_valid(mk(PhyMode::THZ_SC, Modulation::OOK, Fec::LDPC_11_15)));
    CHECK_FALSE(is_valid(mk(PhyMode::THZ_OOK, Modulation::BPSK, Fec::LDPC_11_15)));
    CHECK_FALSE(is_valid(mk(PhyMode::THZ_SC, Modulation::QAM64, Fec::RS_240_224)));
}

TEST_CASE("mandatory schemes") {
    CHECK(is_mandatory(kBpskLow));
    CHECK(is_mandatory(mk(PhyMode::THZ_SC, Modulation::BPSK, Fec::LDPC_14_15)));
    CHECK(is_mandatory(mk(PhyMode::THZ_SC, Modulation::QPSK, Fec::LDPC_11_15)));
    CHECK(is_mandatory(kOokRs));
    CHECK_FALSE(is_mandatory(kQam64High));
    CHECK_FALSE(is_mandatory(mk(PhyMode::THZ_OOK, Modulation::OOK, Fec::LDPC_11_15)));
}

TEST_CASE("bits per symbol and exact code rates") {
    CHECK(bits_per_symbol(Modulation::OOK) == 1);
    CHECK(bits_per_symbol(Modulation::BPSK) == 1);
    CHECK(bits_per_symbol(Modulation::QPSK) == 2);
    CHECK(bits_per_symbol(Modulation::PSK8) == 3);
    CHECK(bits_per_symbol(Modulation::APSK8) == 3);
    CHECK(bits_per_symbol(Modulation::QAM16) == 4);
    CHECK(bits_per_symbol(Modulation::QAM64) == 6);

    // code rates carry the actual codeword dimensions: LDPC (1440,1056) and
    // (1440,1344), RS (240,224) -- the ratios reduce to 11/15 and 14/15
    CHECK(code_rate(Fec::LDPC_11_15).num == 1056);
    CHECK(code_rate(Fec::LDPC_11_15).den == 1440);
    CHECK(code_rate(Fec::LDPC_11_15).value() == doctest::Approx(11.0 / 15.0));
    CHECK(code_rate(Fec::LDPC_14_15).num == 1344);
    CHECK(code_rate(Fec::LDPC_14_15).den == 1440);
    CHECK(code_rate(Fec::LDPC_14_15).value() == doctest::Approx(14.0 / 15.0));
    CHECK(code_rate(Fec::RS_240_224).num == 224);
    CHECK(code_rate(Fec::RS_240_224).den == 240);
}

TEST_CASE("MCS name and index round trips") {
    for (const Mcs& m : all_mcs()) {
        CHECK(parse_mcs(to_string(m)) == m);
        CHECK(mcs_from_index(m.mode, mcs_index(m)) == m);
    }
    CHECK(to_string(kOokRs) == "ook-rs");
    CHECK(to_string(kQam64High) == "64qam-14/15");
    CHECK_THROWS_AS(parse_mcs("qam256-1/2"), ValidationError);
    CHECK_THROWS_AS(parse_mcs(""), ValidationError);
}

TEST_CASE("symbol rate is multiplier x 1.76 GBd") {
    CHECK(symbol_rate_gbd(channel_by_id(1)) == doctest::Approx(1.76));
    CHECK(symbol_rate_gbd(channel_by_id(41)) == doctest::Approx(3.52));
    CHECK(symbol_rate_gbd(channel_by_id(69)) == doctest::Approx(56.32));
}

TEST_CASE("quoted data-rate anchors") {
    CHECK(trunc2(data_rate_gbps(kOokRs, channel_by_id(1))) == doctest::Approx(1.64));
    CHECK(trunc2(data_rate_gbps(kOokRs, channel_by_id(69))) == doctest::Approx(52.56));
    CHECK(trunc2(data_rate_gbps(kQam64High, channel_by_id(69))) == doctest::Approx(315.39));
}

TEST_CASE("data rate scales linearly with bandwidth class") {
    for (const Mcs& m : all_mcs()) {
        const double base = data_rate_gbps(m, channel_by_id(1));
        CHECK(data_rate_gbps(m, channel_by_id(41)) == doctest::Approx(2.0 * base));
        CHECK(data_rate_gbps(m, channel_by_id(69)) == doctest::Approx(32.0 * base));
    }
}

TEST_CASE("free-space path loss") {
    // 20 log10(4 pi d f / c) with f = 300 GHz, c = 299792458 m/s
    CHECK(fspl_db(300.0, 1.0) == doctest::Approx(81.9855).epsilon(1e-4));
    // +20 dB per decade of distance
    CHECK(fspl_db(300.0, 10.0) - fspl_db(300.0, 1.0) == doctest::Approx(20.0));
    // +6.02 dB per frequency doubling
    CHECK(fspl_db(600.0, 1.0) - fspl_db(300.0, 1.0) == doctest::Approx(6.0206).epsilon(1e-4));
}

TEST_CASE("thermal noise floor") {
    // -174 dBm/Hz + 10 log10(2.16e9) + 8 dB
    CHECK(noise_floor_dbm(2.16, 8.0) == doctest::Approx(-72.6555).epsilon(1e-5));
    // 32x wider band adds 10 log10(32) = 15.05 dB
    CHECK(noise_floor_dbm(69.12, 8.0) - noise_floor_dbm(2.16, 8.0) ==
          doctest::Approx(15.0515).epsilon(1e-4));
}

TEST_CASE("sensitivity anchor: BPSK+11/15 and OOK+11/15 at -67 dBm") {
    const Mcs ook_low = mk(PhyMode::THZ_OOK, Modulation::OOK, Fec::LDPC_11_15);
    CHECK(sensitivity_dbm(kBpskLow, 2.16, 8.0) == doctest::Approx(-67.0055).epsilon(1e-4));
    CHECK(sensitivity_dbm(ook_low, 2.16, 8.0) ==
          doctest::Approx(sensitivity_dbm(kBpskLow, 2.16, 8.0)));
}

TEST_CASE("threshold table is monotone in constellation density and code rate") {
    const Modulation order[] = {Modulation::BPSK, Modulation::QPSK, Modulation::PSK8,
                                Modulation::QAM16, Modulation::QAM64};
    for (size_t i = 0; i + 1 < 5; ++i) {
        CHECK(required_snr_db(mk(PhyMode::THZ_SC, order[i], Fec::LDPC_11_15)) <
              required_snr_db(mk(PhyMode::THZ_SC, order[i + 1], Fec::LDPC_11_15)));
    }
    for (const Mcs& m : mcs_for_mode(PhyMode::THZ_SC)) {
        if (m.fec != Fec::LDPC_11_15) continue;
        Mcs high = m;
        high.fec = Fec::LDPC_14_15;
        CHECK(required_snr_db(m) < required_snr_db(high));
    }
}

TEST_CASE("EVM folding: effective SNR saturates at the EVM ceiling") {
    const double evm = evm_db(kQam64High);
    CHECK(evm == doctest::Approx(-22.0));
    CHECK(effective_snr_db(1000.0, evm) == doctest::Approx(22.0).epsilon(1e-6));
    // equal noise contributions compose to 3.01 dB below either
    CHECK(effective_snr_db(10.0, -10.0) == doctest::Approx(10.0 - 10.0 * std::log10(2.0)));
    // effective SNR never exceeds the raw SNR
    CHECK(effective_snr_db(5.0, -22.0) < 5.0);
}

TEST_CASE("received power itemization includes absorption") {
    const UseCaseProfile& fh = profile_by_name("fronthaul_backhaul");
    const LinkConfig at_1km = fh.make_link(channel_by_id(1), 1000.0);
    const double expected =
        25.0 + 30.0 + 30.0 - fspl_db(300.0, 1000.0) - 2.6; // 2.6 dB/km absorption
    CHECK(rx_power_dbm(at_1km) == doctest::Approx(expected).epsilon(1e-9));

    const UseCaseProfile& dc = profile_by_name("data_center");
    const LinkConfig dc_1km = dc.make_link(channel_by_id(1), 1000.0);
    CHECK(rx_power_dbm(dc_1km) ==
          doctest::Approx(10.0 + 60.0 - fspl_db(300.0, 1000.0)).epsilon(1e-9));
}

TEST_CASE("four use-case profiles with the published parameter set") {
    const auto& profiles = use_case_profiles();
    REQUIRE(profiles.size() == 4);
    const UseCaseProfile& fh = profile_by_name("fronthaul_backhaul");
    CHECK(fh.tx_power_dbm == 25.0);
    CHECK(fh.tx_gain_db == 30.0);
    CHECK(fh.rx_gain_db == 30.0);
    const UseCaseProfile& dc = profile_by_name("data_center");
    CHECK(dc.tx_power_dbm == 10.0);
    const UseCaseProfile& kiosk = profile_by_name("kiosk");
    CHECK(kiosk.tx_power_dbm == 0.0);
    CHECK(kiosk.tx_gain_db == 24.0);
    CHECK(kiosk.rx_gain_db == 12.0);
    const UseCaseProfile& intra = profile_by_name("intra_device");
    CHECK(intra.tx_gain_db == 6.0);
    CHECK(intra.rx_gain_db == 6.0);
    for (const auto& p : profiles) {
        CHECK(p.carrier_ghz == 300.0);
        CHECK(p.noise_figure_db == 8.0);
    }
    CHECK_THROWS_AS(profile_by_name("unknown"), ValidationError);
}

TEST_CASE("max range: bisection lands on the feasibility boundary") {
    const UseCaseProfile& fh = profile_by_name("fronthaul_backhaul");
    const ChannelDescriptor& ch = channel_by_id(66);
    const RangeResult rr = max_range_m(fh, fh.default_mcs, ch);
    REQUIRE(rr.feasible);
    CHECK(link_feasible(fh.make_link(ch, rr.range_m)).feasible);
    CHECK_FALSE(link_feasible(fh.make_link(ch, rr.range_m + 2e-3)).feasible);
}

TEST_CASE("max range decreases with bandwidth") {
    const UseCaseProfile& dc = profile_by_name("data_center");
    double prev = 1e300;
    for (int id : {1, 33, 49, 57, 62, 66, 68, 69}) {
        const double r = max_range_m(dc, dc.default_mcs, channel_by_id(id)).range_m;
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("max range reports infeasible links and rate preconditions") {
    UseCaseProfile weak = profile_by_name("intra_device");
    weak.tx_power_dbm = -100.0;
    weak.tx_gain_db = 0.0;
    weak.rx_gain_db = 0.0;
    const RangeResult rr = max_range_m(weak, weak.default_mcs, channel_by_id(69));
    CHECK_FALSE(rr.feasible);
    CHECK(rr.range_m == 0.0);

    const UseCaseProfile& fh = profile_by_name("fronthaul_backhaul");
    // BPSK on 2.16 GHz tops out at 1.29 Gbit/s; demanding 100 is impossible
    CHECK_THROWS_AS(max_range_m(fh, kBpskLow, channel_by_id(1), 100.0), ValidationError);
}

TEST_CASE("best_mcs picks the highest feasible rate, lower order on ties") {
    const UseCaseProfile& fh = profile_by_name("fronthaul_backhaul");
    // short range, huge margin: the top MCS wins
    CHECK(best_mcs(fh.make_link(channel_by_id(1), 0.1)) == kQam64High);

    // 8PSK and 8APSK with the same code share rate and threshold; at a
    // distance where 16-QAM no longer closes, the rate tie must resolve to
    // 8PSK, the lower modulation order of the pair
    const ChannelDescriptor& ch = channel_by_id(1);
    const double r16 =
        max_range_m(fh, mk(PhyMode::THZ_SC, Modulation::QAM16, Fec::LDPC_11_15), ch).range_m;
    const double r8 =
        max_range_m(fh, mk(PhyMode::THZ_SC, Modulation::PSK8, Fec::LDPC_11_15), ch).range_m;
    REQUIRE(r16 < r8);
    const Mcs pick = best_mcs(fh.make_link(ch, 0.5 * (r16 + r8)));
    CHECK(pick.modulation == Modulation::PSK8);
    CHECK(pick.fec == Fec::LDPC_11_15);

    UseCaseProfile weak = fh;
    weak.tx_power_dbm = -200.0;
    CHECK_THROWS_AS(best_mcs(weak.make_link(ch, 1.0)), NoFeasibleMcs);
}

TEST_CASE("OOK and BPSK share every threshold, matching the sensitivity claim") {
    for (Fec fec : {Fec::LDPC_11_15, Fec::LDPC_14_15}) {
        CHECK(required_snr_db(mk(PhyMode::THZ_OOK, Modulation::OOK, fec)) ==
              doctest::Approx(required_snr_db(mk(PhyMode::THZ_SC, Modulation::BPSK, fec))));
    }
}
