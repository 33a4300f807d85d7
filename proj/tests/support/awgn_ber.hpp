// Monte-Carlo AWGN bit-error simulator used to derive and verify the
// per-modulation SNR thresholds. Self-contained on purpose: it must not
// share any code with the link-budget engine it calibrates.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace awgn {

struct Point {
    double i = 0.0;
    double q = 0.0;
};

// Constellations are unit average energy, Gray-labelled. OOK is simulated
// as antipodal signaling (ideal DC-balanced receiver), which pins its BER
// curve to BPSK as required by the equal-sensitivity anchor.
enum class Mod { OOK, BPSK, QPSK, PSK8, APSK8, QAM16, QAM64 };

inline int mod_bits(Mod m) {
    switch (m) {
        case Mod::OOK:
        case Mod::BPSK: return 1;
        case Mod::QPSK: return 2;
        case Mod::PSK8:
        case Mod::APSK8: return 3;
        case Mod::QAM16: return 4;
        case Mod::QAM64: return 6;
    }
    return 0;
}

inline std::string mod_name(Mod m) {
    switch (m) {
        case Mod::OOK: return "ook";
        case Mod::BPSK: return "bpsk";
        case Mod::QPSK: return "qpsk";
        case Mod::PSK8: return "8psk";
        case Mod::APSK8: return "8apsk";
        case Mod::QAM16: return "16qam";
        case Mod::QAM64: return "64qam";
    }
    return "?";
}

// Constellation table indexed by the transmitted bit label.
inline std::vector<Point> constellation(Mod m) {
    auto gray = [](unsigned x) { return x ^ (x >> 1); };
    std::vector<Point> pts;
    switch (m) {
        case Mod::OOK:
        case Mod::BPSK:
            pts = {{-1.0, 0.0}, {1.0, 0.0}};
            break;
        case Mod::QPSK: {
            const double a = 1.0 / std::sqrt(2.0);
            pts.resize(4);
            for (unsigned b = 0; b < 4; ++b)
                pts[b] = {(b & 2) ? a : -a, (b & 1) ? a : -a};
            break;
        }
        case Mod::PSK8: {
            pts.resize(8);
            for (unsigned b = 0; b < 8; ++b) {
                // invert the Gray map: label b sits at position k with gray(k)=b
                unsigned k = 0;
                while (gray(k) != b) ++k;
                const double ang = 2.0 * M_PI * k / 8.0;
                pts[b] = {std::cos(ang), std::sin(ang)};
            }
            break;
        }
        case Mod::APSK8: {
            // (4,4) APSK, ring ratio 1+sqrt(2): equalizes the ring-to-ring
            // and intra-ring minimum distances.
            const double rho = 1.0 + std::sqrt(2.0);
            const double r1 = std::sqrt(2.0 / (1.0 + rho * rho));
            const double r2 = rho * r1;
            pts.resize(8);
            for (unsigned b = 0; b < 8; ++b) {
                const unsigned ring = b >> 2; // 0 inner, 1 outer
                const unsigned ph = b & 3;
                unsigned k = 0;
                while (gray(k) != ph) ++k;
                const double ang = M_PI / 4.0 + 2.0 * M_PI * k / 4.0;
                const double r = ring ? r2 : r1;
                pts[b] = {r * std::cos(ang), r * std::sin(ang)};
            }
            break;
        }
        case Mod::QAM16: {
            const double s = 1.0 / std::sqrt(10.0);
            const double lv[4] = {-3 * s, -1 * s, 1 * s, 3 * s};
            pts.resize(16);
            for (unsigned b = 0; b < 16; ++b) {
                unsigned bi = b >> 2, bq = b & 3;
                unsigned ki = 0, kq = 0;
                while (gray(ki) != bi) ++ki;
                while (gray(kq) != bq) ++kq;
                pts[b] = {lv[ki], lv[kq]};
            }
            break;
        }
        case Mod::QAM64: {
            const double s = 1.0 / std::sqrt(42.0);
            double lv[8];
            for (int k = 0; k < 8; ++k) lv[k] = (2 * k - 7) * s;
            pts.resize(64);
            for (unsigned b = 0; b < 64; ++b) {
                unsigned bi = b >> 3, bq = b & 7;
                unsigned ki = 0, kq = 0;
                while (gray(ki) != bi) ++ki;
                while (gray(kq) != bq) ++kq;
                pts[b] = {lv[ki], lv[kq]};
            }
            break;
        }
    }
    return pts;
}

/// Estimated bit error rate at the given symbol SNR (Es/N0 in dB),
/// maximum-likelihood (nearest-neighbour) demodulation.
inline double estimate_ber(Mod m, double snr_db, uint64_t num_symbols, uint64_t seed) {
    const auto pts = constellation(m);
    const int bits = mod_bits(m);
    const unsigned M = static_cast<unsigned>(pts.size());
    const double n0 = std::pow(10.0, -snr_db / 10.0); // Es = 1
    const double sigma = std::sqrt(n0 / 2.0);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    std::uniform_int_distribution<unsigned> label(0, M - 1);

    uint64_t bit_errors = 0;
    for (uint64_t n = 0; n < num_symbols; ++n) {
        const unsigned tx = label(rng);
        const double ri = pts[tx].i + noise(rng);
        const double rq = pts[tx].q + noise(rng);
        unsigned best = 0;
        double best_d = 1e300;
        for (unsigned c = 0; c < M; ++c) {
            const double di = ri - pts[c].i;
            const double dq = rq - pts[c].q;
            const double d = di * di + dq * dq;
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
        bit_errors += static_cast<uint64_t>(__builtin_popcount(tx ^ best));
    }
    return static_cast<double>(bit_errors) / (static_cast<double>(num_symbols) * bits);
}

/// SNR (dB) at which the BER curve crosses target_ber, by bisection.
/// BER is monotone decreasing in SNR over the searched interval.
inline double snr_at_ber(Mod m, double target_ber, uint64_t symbols_per_eval,
                         int iterations, uint64_t seed) {
    double lo = -10.0, hi = 35.0;
    for (int it = 0; it < iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double ber = estimate_ber(m, mid, symbols_per_eval, seed + 7919 * it);
        if (ber > target_ber)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace awgn
