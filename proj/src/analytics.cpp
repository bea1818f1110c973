#include "ftqkd/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ftqkd/model.hpp"

namespace ftqkd {

double binary_entropy(double e) {
    if (!(e >= 0.0 && e <= 1.0))
        throw std::invalid_argument("binary_entropy: argument must be in [0, 1]");
    if (e == 0.0 || e == 1.0) return 0.0;
    return -e * std::log2(e) - (1.0 - e) * std::log2(1.0 - e);
}

double delta_from_jitter(double jitter_sigma, double d_tilde, double scale) {
    if (d_tilde == 0.0)
        throw std::invalid_argument("delta_from_jitter: d_tilde must be nonzero");
    if (!(jitter_sigma >= 0.0))
        throw std::invalid_argument("delta_from_jitter: jitter_sigma must be >= 0");
    if (!(scale > 0.0))
        throw std::invalid_argument("delta_from_jitter: scale must be > 0");
    return scale * jitter_sigma / std::sqrt(std::abs(d_tilde));
}

double qber_bound(double delta) {
    if (!(delta >= 0.0))
        throw std::invalid_argument("qber_bound: delta must be >= 0");
    if (delta == 0.0) return 0.0;
    return (2.0 * delta / std::numbers::pi) * std::exp(-std::numbers::pi / (4.0 * delta * delta));
}

double qber_exact(double delta) {
    if (delta <= 0.0) return 0.0;
    const double sigma_n = delta / std::numbers::sqrt2;
    const double slot = std::sqrt(std::numbers::pi);
    double sum = 0.0;
    for (int k = 1; k < 10000; k += 2) {
        const double lo = (k - 0.5) * slot / sigma_n;
        const double hi = (k + 0.5) * slot / sigma_n;
        const double term = 0.5 * (std::erfc(lo / std::numbers::sqrt2) - std::erfc(hi / std::numbers::sqrt2));
        sum += term;
        if (term < 1e-15) break;
    }
    return 2.0 * sum;
}

double key_rate(double e, double gain, double f) {
    if (!(e >= 0.0 && e <= 0.5))
        throw std::invalid_argument("key_rate: qber must be in [0, 0.5]");
    if (!(gain >= 0.0 && gain <= 1.0))
        throw std::invalid_argument("key_rate: gain must be in [0, 1]");
    if (!(f >= 1.0))
        throw std::invalid_argument("key_rate: f must be >= 1");
    const double h = binary_entropy(e);
    return gain * (0.5 * (1.0 - f * h - h));
}

double security_threshold(double f) {
    if (!(f >= 1.0))
        throw std::invalid_argument("security_threshold: f must be >= 1");
    // residual(e) = 1 - (1+f) H2(e): positive at 0+, negative at 1/2,
    // strictly decreasing on (0, 1/2).
    const auto residual = [f](double e) { return 1.0 - (1.0 + f) * binary_entropy(e); };
    double lo = 0.0, hi = 0.5;
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<RatePoint> jitter_sweep(const std::vector<double>& jitters_ps, double d_ps_per_nm,
                                    double wavelength_nm, double f, double gain,
                                    double delta_scale) {
    if (jitters_ps.empty())
        throw std::invalid_argument("jitter_sweep: empty jitter list");
    const double d_tilde = convert_dispersion(d_ps_per_nm, wavelength_nm);
    std::vector<RatePoint> points;
    points.reserve(jitters_ps.size());
    for (const double jitter : jitters_ps) {
        RatePoint p;
        p.jitter_sigma = jitter;
        p.delta = delta_from_jitter(jitter, d_tilde, delta_scale);
        p.qber_bound = qber_bound(p.delta);
        p.qber_exact = qber_exact(p.delta);
        p.key_rate = key_rate(p.qber_exact, gain, f);
        points.push_back(p);
    }
    return points;
}

}  // namespace ftqkd
