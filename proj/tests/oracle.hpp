#pragma once

// Test-only oracle: slot-decoding error probability by brute-force
// composite-Simpson integration of the Gaussian density over the error
// bands. Deliberately avoids erf/erfc so it stays independent of the
// series implementation it cross-checks.

#include <cmath>
#include <numbers>

namespace oracle {

inline double gaussian_pdf(double x, double sigma) {
    const double z = x / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

inline double simpson(double a, double b, int intervals, double sigma) {
    const double h = (b - a) / intervals;
    double sum = gaussian_pdf(a, sigma) + gaussian_pdf(b, sigma);
    for (int i = 1; i < intervals; ++i) sum += gaussian_pdf(a + i * h, sigma) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Error probability of nearest-slot decoding with slot width sqrt(pi)
// under Gaussian noise of std delta / sqrt(2): the noise falls in a band
// ((k - 1/2) sqrt(pi), (k + 1/2) sqrt(pi)) with k odd.
inline double qber_by_quadrature(double delta) {
    if (delta <= 0.0) return 0.0;
    const double sigma_n = delta / std::sqrt(2.0);
    const double slot = std::sqrt(std::numbers::pi);
    double total = 0.0;
    for (int k = 1; k < 2001; k += 2) {
        const double lo = (k - 0.5) * slot;
        const double hi = (k + 0.5) * slot;
        if (lo > 40.0 * sigma_n) break;
        total += simpson(lo, hi, 4096, sigma_n);
    }
    return 2.0 * total;
}

}  // namespace oracle
