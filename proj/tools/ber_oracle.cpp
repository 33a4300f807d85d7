// Offline Monte-Carlo threshold generator. Prints, for each modulation and
// pre-FEC BER target, the uncalibrated AWGN SNR threshold (Es/N0, dB) and
// the calibrated value after shifting the whole table so that the
// BPSK + 11/15 entry lands exactly on the -67 dBm sensitivity anchor
// (5.65 dB above the 2.16 GHz noise floor).
#include "awgn_ber.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <cstring>

int main(int argc, char** argv) {
    uint64_t symbols = 10'000'000;
    int iterations = 20;
    uint64_t seed = 0x3d5eedULL;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--symbols") && i + 1 < argc)
            symbols = std::strtoull(argv[++i], nullptr, 10);
        else if (!std::strcmp(argv[i], "--iterations") && i + 1 < argc)
            iterations = std::atoi(argv[++i]);
        else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc)
            seed = std::strtoull(argv[++i], nullptr, 10);
        else {
            std::fprintf(stderr, "usage: %s [--symbols N] [--iterations N] [--seed N]\n", argv[0]);
            return 2;
        }
    }

    // Pre-FEC BER operating points of the two LDPC codes; the RS code is
    // grouped with the high-rate LDPC.
    const double target_low_rate = 0.10;  // 11/15 LDPC
    const double target_high_rate = 0.08; // 14/15 LDPC, (240,224) RS
    const double bpsk_low_anchor_db = 5.65;

    const awgn::Mod mods[] = {awgn::Mod::OOK,   awgn::Mod::BPSK,  awgn::Mod::QPSK,
                              awgn::Mod::PSK8,  awgn::Mod::APSK8, awgn::Mod::QAM16,
                              awgn::Mod::QAM64};

    const double bpsk_raw =
        awgn::snr_at_ber(awgn::Mod::BPSK, target_low_rate, symbols, iterations, seed);
    const double calibration_db = bpsk_low_anchor_db - bpsk_raw;

    std::printf("# symbols_per_eval=%" PRIu64 " iterations=%d seed=%" PRIu64 "\n", symbols,
                iterations, seed);
    std::printf("# calibration constant: %+.4f dB (BPSK@%.2f -> %.2f dB)\n", calibration_db,
                target_low_rate, bpsk_low_anchor_db);
    std::printf("modulation,target_ber,raw_snr_db,calibrated_snr_db\n");
    for (awgn::Mod m : mods) {
        for (double target : {target_low_rate, target_high_rate}) {
            const double raw = awgn::snr_at_ber(m, target, symbols, iterations, seed);
            std::printf("%s,%.3f,%.4f,%.4f\n", awgn::mod_name(m).c_str(), target, raw,
                        raw + calibration_db);
        }
    }
    return 0;
}
