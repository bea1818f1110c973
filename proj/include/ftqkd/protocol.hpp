#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "ftqkd/config.hpp"
#include "ftqkd/model.hpp"

namespace ftqkd {

// Protocol layer: passive basis choice, sifting, rescaling to dimensionless
// values, modular-slot bit extraction, and session statistics.

/// Slot width of the continuous-to-bit binning.
inline const double kSlotWidth = std::sqrt(std::numbers::pi);

/// A matched-basis pair of rescaled measurement values u = T / tau,
/// tau = sqrt(|d_tilde|).
struct SiftedPair {
    Basis basis;
    double u_a, u_b;
};

struct ProtocolStats {
    std::uint64_t pairs_emitted = 0;
    std::uint64_t pairs_sifted = 0;
    double gain = 0.0;
    double qber_time = 0.0;
    double qber_freq = 0.0;
    double qber_overall = 0.0;
    double cond_variance = 0.0;   // variance of u_b - u_a over sifted pairs
    double delta_estimate = 0.0;  // sqrt(2) * conditional std
    double key_rate = 0.0;        // raw; negative values are clamped only in CSV output
};

/// Encoder output: the key bit is the parity of the sqrt(pi)-wide slot
/// containing u_a; the in-slot offset is announced publicly.
struct EncodedBit {
    int bit;
    double offset;  // in [0, sqrt(pi))
};

/// Passive 50/50 beam-splitter basis choice.
Basis choose_basis(PairStream& rng);

/// u = timestamp / tau; tau must be > 0.
double rescale(double timestamp_ps, double tau_ps);

/// Keep index-aligned pairs where both arms detected in the same basis;
/// rescale both timestamps by tau. Throws on length mismatch.
std::vector<SiftedPair> sift(const std::vector<DetectionEvent>& events_a,
                             const std::vector<DetectionEvent>& events_b, double tau);

/// bit = floor(u_a / sqrt(pi)) mod 2 (mathematical mod), offset = u_a mod sqrt(pi).
EncodedBit gp_encode(double u_a);

/// Nearest-slot decoding: m = round((u_b - offset) / sqrt(pi)), half away
/// from zero; returns m mod 2 in {0, 1}.
int gp_decode(double u_b, double offset);

/// Aggregate a sifted session: per-basis and overall QBER from
/// encode/decode mismatches, conditional variance of u_b - u_a, gain, and
/// the resulting key rate. Throws on an empty sifted list.
ProtocolStats estimate_stats(const std::vector<SiftedPair>& sifted, std::uint64_t pairs_emitted,
                             double f);

/// Quantum transmission and sifting stage of a session: per pair,
/// sample -> (optional attack) -> per-basis arrival -> detect -> sift.
/// Pairs are processed in fixed-size index blocks, each pair drawing from
/// its own counter-derived stream, so the result is identical for any
/// worker count.
std::vector<SiftedPair> collect_sifted(const SimConfig& cfg, unsigned threads = 1);

/// Full session: collect_sifted followed by estimate_stats.
/// Deterministic for fixed (config, seed) independent of worker count.
ProtocolStats run_session(const SimConfig& cfg, unsigned threads = 1);

}  // namespace ftqkd
