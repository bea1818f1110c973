#pragma once

#include "ftqkd/rng.hpp"

namespace ftqkd {

// Physical model of the entangled link: an SPDC-like source emitting
// energy-time correlated photon pairs, dispersive fibers that map a
// photon's frequency detuning into a time delay, and time-resolving
// single-photon detectors with Gaussian jitter.
//
// Internal units are ps for time and ps^-1 for frequency. Wavelengths (nm)
// and dispersion coefficients (ps/nm) appear only at configuration
// boundaries and are converted on entry.

inline constexpr double kSpeedOfLight = 299792.458;  // nm/ps

enum class Party { Alice, Bob };
enum class Basis { Time, Frequency };

/// Energy-time entangled pair source. A pump photon at nu_pump splits into
/// two daughters whose sums/differences are tightly correlated:
/// nu_a + nu_b ~= nu_pump (width sigma_corr_nu) and t_a ~= t_b (width
/// sigma_corr_t), while each daughter individually has a broad spectrum
/// (sigma_single) and a broad emission time (uniform over emission_window).
struct SourceParams {
    double nu_pump = 2.0 * kSpeedOfLight / 1550.0;  // ps^-1 (775 nm pump)
    double nu_center = kSpeedOfLight / 1550.0;      // ps^-1, shared reference nu_0 = nu_pump / 2
    double sigma_single = 0.1;                      // ps^-1 (100 GHz), per-photon spectral std
    double sigma_corr_nu = 0.0;                     // ps^-1, std of nu_a + nu_b - nu_pump
    double emission_window = 10000.0;               // ps, uniform emission-time window
    double sigma_corr_t = 1.0;                      // ps, std of t_a - t_b
};

struct DetectorParams {
    double jitter_sigma = 70.0;  // ps, Gaussian timestamp jitter
    double efficiency = 1.0;     // detection probability before path losses
};

struct OpticalPath {
    double dispersion_ps_per_nm = 7000.0;  // signed; the two arms carry opposite signs
    double wavelength_nm = 1550.0;
    double insertion_loss_db = 5.0;        // dispersive module, frequency basis only
    double channel_loss_db = 0.0;
};

struct PhotonPair {
    double t_emit;      // ps
    double t_a, t_b;    // ps, per-arm emission times
    double nu_a, nu_b;  // ps^-1, per-arm frequencies
};

struct DetectionEvent {
    Party party;
    Basis basis;
    double timestamp;  // ps; meaningful only when detected
    bool detected;
};

// Parameter validation; throws std::invalid_argument naming the offending
// field, prefixed with `where` so callers can report a full config path.
void validate(const SourceParams& src, const char* where = "source");
void validate(const DetectorParams& det, const char* where = "detector");
void validate(const OpticalPath& path, const char* where = "path");

/// Convert a dispersion coefficient D (ps/nm) at carrier wavelength lambda
/// into the frequency-form coefficient D~ = D * lambda^2 / c in ps^2
/// (group delay per unit ps^-1 of detuning). Sign is preserved.
double convert_dispersion(double d_ps_per_nm, double wavelength_nm);

/// Wavelength resolution (nm) of a dispersive frequency-to-time
/// spectrometer: detector time resolution divided by |D|.
double spectral_resolution(double time_resolution_ps, double d_ps_per_nm);

/// Draw one entangled pair. With sigma_corr_nu = 0 the sampled pair
/// satisfies nu_a + nu_b = nu_pump to floating precision; with
/// sigma_corr_t = 0, t_a = t_b exactly.
PhotonPair sample_pair(const SourceParams& src, PairStream& rng);

/// Frequency-basis detection time after a dispersive element:
/// T = t + d_tilde * (nu - nu_center). Deterministic and affine in nu.
double dispersed_arrival(double t, double nu, double d_tilde, double nu_center);

/// Bernoulli detection with probability
///   efficiency * 10^-(channel_loss_db [+ insertion_loss_db in frequency basis]) / 10,
/// followed by Gaussian timestamp jitter when the photon is detected.
DetectionEvent detect(double t_arrival, Party party, Basis basis, const DetectorParams& det,
                      const OpticalPath& path, PairStream& rng);

}  // namespace ftqkd
