#pragma once

#include <vector>

namespace ftqkd {

// Closed-form layer: everything here is deterministic arithmetic, the
// analytic counterpart of the Monte Carlo session in protocol.*.

/// One point of a jitter sweep.
struct RatePoint {
    double jitter_sigma;  // ps
    double delta;         // dimensionless conditional-noise measure
    double qber_bound;    // (2*delta/pi) * exp(-pi / (4*delta^2))
    double qber_exact;    // exact slot-decoding error under Gaussian noise
    double key_rate;      // bits per emitted-pair opportunity, from qber_exact
};

/// H2(e) = -e*log2(e) - (1-e)*log2(1-e); H2(0) = H2(1) = 0 by continuity.
double binary_entropy(double e);

/// Dimensionless noise measure of a session with detector jitter
/// jitter_sigma on both arms: delta = scale * jitter_sigma / sqrt(|d_tilde|).
/// The default scale 2 makes sigma_noise = delta / sqrt(2) the std of the
/// rescaled two-detector timing difference.
double delta_from_jitter(double jitter_sigma, double d_tilde, double scale = 2.0);

/// Upper bound on the intrinsic QBER: (2*delta/pi) * exp(-pi / (4*delta^2)).
/// This is the phi(z)/z tail overestimate of the exact rate below.
double qber_bound(double delta);

/// Exact error probability of nearest-slot decoding with slot width
/// sqrt(pi) under Gaussian residual noise of std delta / sqrt(2):
/// the decoded slot index is off by an odd count. Evaluated as a band sum
///   2 * sum_{k odd, k>0} P(noise in ((k-1/2) sqrt(pi), (k+1/2) sqrt(pi))),
/// truncated once a term drops below 1e-15.
double qber_exact(double delta);

/// Secure key rate R = gain/2 * (1 - f*H2(e) - H2(e)).
/// May be negative; callers clamp for reporting.
double key_rate(double e, double gain, double f);

/// QBER at which the key rate crosses zero: the root of
/// 1 - (1 + f) * H2(e) on (0, 0.5), found by bisection (residual < 1e-10).
double security_threshold(double f);

/// Analytic sweep over detector jitters at fixed optics: composes
/// convert_dispersion, delta_from_jitter, the two QBER forms, and key_rate
/// (fed with qber_exact).
std::vector<RatePoint> jitter_sweep(const std::vector<double>& jitters_ps, double d_ps_per_nm,
                                    double wavelength_nm, double f, double gain,
                                    double delta_scale = 2.0);

}  // namespace ftqkd
