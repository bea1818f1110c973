#pragma once

#include <optional>

#include "ftqkd/model.hpp"
#include "ftqkd/rng.hpp"

namespace ftqkd {

// Intercept-resend eavesdropper on Bob's arm. Eve measures one variable of
// the intercepted photon (with her own apparatus noise) and re-emits a
// photon carrying that value; the conjugate variable of the resent photon
// is drawn fresh, uncorrelated with Alice's photon.

enum class EveMode { None, InterceptResend };
enum class EvePolicy { AlwaysTime, AlwaysFrequency, Random };

struct EveStrategy {
    EveMode mode = EveMode::None;
    EvePolicy measure_basis_policy = EvePolicy::AlwaysTime;
    double eve_jitter_sigma = 70.0;  // ps, applied once on measurement and once on re-emission
    // Spread of the fresh conjugate draw. Unset means maximally
    // uninformative: 10 * sigma_single when the conjugate is frequency
    // (ps^-1), emission_window when it is time (ps).
    std::optional<double> resend_conjugate_sigma;
};

/// Apply the attack to one pair. Mode None is the identity. Alice's arm is
/// never touched. `d_tilde` (ps^2) is the magnitude of the dispersive
/// coefficient Eve uses for her own frequency readout; her timing jitter
/// maps to a frequency error of eve_jitter_sigma / d_tilde.
PhotonPair attack_pair(const PhotonPair& pair, const EveStrategy& eve, const SourceParams& src,
                       double d_tilde, PairStream& rng);

}  // namespace ftqkd
