#include "ftqkd/adversary.hpp"

#include <cmath>
#include <stdexcept>

namespace ftqkd {

PhotonPair attack_pair(const PhotonPair& pair, const EveStrategy& eve, const SourceParams& src,
                       double d_tilde, PairStream& rng) {
    if (eve.mode == EveMode::None) return pair;

    bool measure_time = true;
    switch (eve.measure_basis_policy) {
        case EvePolicy::AlwaysTime: measure_time = true; break;
        case EvePolicy::AlwaysFrequency: measure_time = false; break;
        case EvePolicy::Random: measure_time = rng.coin(); break;
    }

    PhotonPair out = pair;
    if (measure_time) {
        const double measured = pair.t_b + rng.normal(0.0, eve.eve_jitter_sigma);
        out.t_b = measured + rng.normal(0.0, eve.eve_jitter_sigma);
        const double conj_sigma = eve.resend_conjugate_sigma.value_or(10.0 * src.sigma_single);
        out.nu_b = rng.normal(src.nu_center, conj_sigma);
    } else {
        if (!(std::abs(d_tilde) > 0.0))
            throw std::invalid_argument("attack_pair: frequency readout needs nonzero d_tilde");
        const double sigma_nu = eve.eve_jitter_sigma / std::abs(d_tilde);
        const double measured = pair.nu_b + rng.normal(0.0, sigma_nu);
        out.nu_b = measured + rng.normal(0.0, sigma_nu);
        const double conj_sigma = eve.resend_conjugate_sigma.value_or(src.emission_window);
        out.t_b = rng.normal(0.5 * src.emission_window, conj_sigma);
    }
    return out;
}

}  // namespace ftqkd
