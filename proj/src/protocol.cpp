#include "ftqkd/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ftqkd/adversary.hpp"
#include "ftqkd/analytics.hpp"

namespace ftqkd {

Basis choose_basis(PairStream& rng) { return rng.coin() ? Basis::Frequency : Basis::Time; }

double rescale(double timestamp_ps, double tau_ps) {
    if (!(tau_ps > 0.0)) throw std::invalid_argument("rescale: tau must be > 0");
    return timestamp_ps / tau_ps;
}

std::vector<SiftedPair> sift(const std::vector<DetectionEvent>& events_a,
                             const std::vector<DetectionEvent>& events_b, double tau) {
    if (events_a.size() != events_b.size())
        throw std::invalid_argument("sift: event lists differ in length");
    if (!(tau > 0.0)) throw std::invalid_argument("sift: tau must be > 0");

    std::vector<SiftedPair> kept;
    for (std::size_t i = 0; i < events_a.size(); ++i) {
        const DetectionEvent& a = events_a[i];
        const DetectionEvent& b = events_b[i];
        if (!a.detected || !b.detected || a.basis != b.basis) continue;
        kept.push_back({a.basis, a.timestamp / tau, b.timestamp / tau});
    }
    return kept;
}

EncodedBit gp_encode(double u_a) {
    double k = std::floor(u_a / kSlotWidth);
    double offset = u_a - k * kSlotWidth;
    // floor(u/slot) can round across the slot edge; renormalize so that
    // offset stays in [0, slot) with the parity kept consistent.
    if (offset < 0.0) {
        offset += kSlotWidth;
        k -= 1.0;
    } else if (offset >= kSlotWidth) {
        offset -= kSlotWidth;
        k += 1.0;
    }
    const long long slot_index = static_cast<long long>(k);
    return {static_cast<int>(((slot_index % 2) + 2) % 2), offset};
}

int gp_decode(double u_b, double offset) {
    const long long m = std::llround((u_b - offset) / kSlotWidth);
    return static_cast<int>(((m % 2) + 2) % 2);
}

ProtocolStats estimate_stats(const std::vector<SiftedPair>& sifted, std::uint64_t pairs_emitted,
                             double f) {
    if (sifted.empty()) throw std::invalid_argument("estimate_stats: no sifted pairs");
    if (pairs_emitted < sifted.size())
        throw std::invalid_argument("estimate_stats: pairs_emitted < sifted count");

    std::uint64_t n_time = 0, n_freq = 0, err_time = 0, err_freq = 0;
    double sum_d = 0.0, sum_d2 = 0.0;
    for (const SiftedPair& sp : sifted) {
        const EncodedBit enc = gp_encode(sp.u_a);
        const bool error = gp_decode(sp.u_b, enc.offset) != enc.bit;
        if (sp.basis == Basis::Time) {
            ++n_time;
            err_time += error;
        } else {
            ++n_freq;
            err_freq += error;
        }
        const double d = sp.u_b - sp.u_a;
        sum_d += d;
        sum_d2 += d * d;
    }

    ProtocolStats stats;
    stats.pairs_emitted = pairs_emitted;
    stats.pairs_sifted = sifted.size();
    stats.gain = static_cast<double>(sifted.size()) / static_cast<double>(pairs_emitted);
    const double n = static_cast<double>(sifted.size());
    stats.qber_time = n_time ? static_cast<double>(err_time) / static_cast<double>(n_time) : 0.0;
    stats.qber_freq = n_freq ? static_cast<double>(err_freq) / static_cast<double>(n_freq) : 0.0;
    stats.qber_overall = static_cast<double>(err_time + err_freq) / n;
    const double mean = sum_d / n;
    stats.cond_variance = std::max(0.0, sum_d2 / n - mean * mean);
    stats.delta_estimate = std::sqrt(2.0 * stats.cond_variance);
    stats.key_rate = key_rate(std::min(stats.qber_overall, 0.5), stats.gain, f);
    return stats;
}

namespace {

constexpr std::uint64_t kBlockPairs = 4096;

}  // namespace

std::vector<SiftedPair> collect_sifted(const SimConfig& cfg, unsigned threads) {
    validate(cfg);

    const OpticalPath path_a = cfg.paths.alice_path();
    const OpticalPath path_b = cfg.paths.bob_path();
    const double d_tilde_a = convert_dispersion(path_a.dispersion_ps_per_nm, path_a.wavelength_nm);
    const double d_tilde_b = convert_dispersion(path_b.dispersion_ps_per_nm, path_b.wavelength_nm);
    const double tau = std::sqrt(std::abs(d_tilde_a));

    const std::uint64_t n_blocks = (cfg.pairs + kBlockPairs - 1) / kBlockPairs;
    std::vector<std::vector<SiftedPair>> blocks(n_blocks);
    std::atomic<std::uint64_t> cursor{0};

    auto worker = [&] {
        std::vector<DetectionEvent> events_a, events_b;
        events_a.reserve(kBlockPairs);
        events_b.reserve(kBlockPairs);
        for (;;) {
            const std::uint64_t block = cursor.fetch_add(1, std::memory_order_relaxed);
            if (block >= n_blocks) break;
            const std::uint64_t begin = block * kBlockPairs;
            const std::uint64_t end = std::min(cfg.pairs, begin + kBlockPairs);
            events_a.clear();
            events_b.clear();
            for (std::uint64_t i = begin; i < end; ++i) {
                PairStream rng(cfg.seed, i);
                PhotonPair pair = sample_pair(cfg.source, rng);
                pair = attack_pair(pair, cfg.eve, cfg.source, std::abs(d_tilde_b), rng);
                const Basis basis_a = choose_basis(rng);
                const Basis basis_b = choose_basis(rng);
                const double arrival_a =
                    basis_a == Basis::Frequency
                        ? dispersed_arrival(pair.t_a, pair.nu_a, d_tilde_a, cfg.source.nu_center)
                        : pair.t_a;
                const double arrival_b =
                    basis_b == Basis::Frequency
                        ? dispersed_arrival(pair.t_b, pair.nu_b, d_tilde_b, cfg.source.nu_center)
                        : pair.t_b;
                events_a.push_back(detect(arrival_a, Party::Alice, basis_a, cfg.detectors.alice,
                                          path_a, rng));
                events_b.push_back(detect(arrival_b, Party::Bob, basis_b, cfg.detectors.bob,
                                          path_b, rng));
            }
            blocks[block] = sift(events_a, events_b, tau);
        }
    };

    const unsigned n_workers = std::max(1u, threads);
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    std::size_t total = 0;
    for (const auto& blk : blocks) total += blk.size();
    std::vector<SiftedPair> sifted;
    sifted.reserve(total);
    for (const auto& blk : blocks) sifted.insert(sifted.end(), blk.begin(), blk.end());
    return sifted;
}

ProtocolStats run_session(const SimConfig& cfg, unsigned threads) {
    return estimate_stats(collect_sifted(cfg, threads), cfg.pairs, cfg.f_ec);
}

}  // namespace ftqkd
