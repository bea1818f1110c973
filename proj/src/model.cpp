#include "ftqkd/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ftqkd {

namespace {

[[noreturn]] void fail(const char* where, const char* what) {
    throw std::invalid_argument(std::string(where) + ": " + what);
}

}  // namespace

void validate(const SourceParams& src, const char* where) {
    if (!(src.nu_pump > 0.0)) fail(where, "nu_pump must be > 0");
    if (!(src.nu_center > 0.0)) fail(where, "nu_center must be > 0");
    if (!(src.sigma_single >= 0.0)) fail(where, "sigma_single must be >= 0");
    if (!(src.sigma_corr_nu >= 0.0)) fail(where, "sigma_corr_nu must be >= 0");
    if (!(src.emission_window > 0.0)) fail(where, "emission_window must be > 0");
    if (!(src.sigma_corr_t >= 0.0)) fail(where, "sigma_corr_t must be >= 0");
}

void validate(const DetectorParams& det, const char* where) {
    if (!(det.jitter_sigma >= 0.0)) fail(where, "jitter_sigma must be >= 0");
    if (!(det.efficiency >= 0.0 && det.efficiency <= 1.0)) fail(where, "efficiency must be in [0, 1]");
}

void validate(const OpticalPath& path, const char* where) {
    if (!(path.wavelength_nm > 0.0)) fail(where, "wavelength_nm must be > 0");
    if (!(path.insertion_loss_db >= 0.0)) fail(where, "insertion_loss_db must be >= 0");
    if (!(path.channel_loss_db >= 0.0)) fail(where, "channel_loss_db must be >= 0");
    if (!std::isfinite(path.dispersion_ps_per_nm)) fail(where, "dispersion_ps_per_nm must be finite");
}

double convert_dispersion(double d_ps_per_nm, double wavelength_nm) {
    if (!std::isfinite(d_ps_per_nm) || !std::isfinite(wavelength_nm))
        throw std::invalid_argument("convert_dispersion: non-finite input");
    if (!(wavelength_nm > 0.0))
        throw std::invalid_argument("convert_dispersion: wavelength_nm must be > 0");
    return d_ps_per_nm * wavelength_nm * wavelength_nm / kSpeedOfLight;
}

double spectral_resolution(double time_resolution_ps, double d_ps_per_nm) {
    if (d_ps_per_nm == 0.0)
        throw std::invalid_argument("spectral_resolution: dispersion must be nonzero");
    return time_resolution_ps / std::abs(d_ps_per_nm);
}

PhotonPair sample_pair(const SourceParams& src, PairStream& rng) {
    PhotonPair pair;
    pair.t_emit = src.emission_window * rng.uniform();
    const double dt = rng.normal(0.0, src.sigma_corr_t);  // t_a - t_b
    pair.t_a = pair.t_emit + 0.5 * dt;
    pair.t_b = pair.t_emit - 0.5 * dt;
    pair.nu_a = rng.normal(src.nu_center, src.sigma_single);
    pair.nu_b = src.nu_pump - pair.nu_a + rng.normal(0.0, src.sigma_corr_nu);
    return pair;
}

double dispersed_arrival(double t, double nu, double d_tilde, double nu_center) {
    return t + d_tilde * (nu - nu_center);
}

DetectionEvent detect(double t_arrival, Party party, Basis basis, const DetectorParams& det,
                      const OpticalPath& path, PairStream& rng) {
    double loss_db = path.channel_loss_db;
    if (basis == Basis::Frequency) loss_db += path.insertion_loss_db;
    const double p_detect = det.efficiency * std::pow(10.0, -loss_db / 10.0);

    DetectionEvent event{party, basis, 0.0, false};
    if (rng.uniform() < p_detect) {
        event.detected = true;
        event.timestamp = t_arrival + rng.normal(0.0, det.jitter_sigma);
    }
    return event;
}

}  // namespace ftqkd
