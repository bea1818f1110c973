#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ftqkd/model.hpp"

using namespace ftqkd;

TEST_CASE("convert_dispersion: ps/nm to ps^2") {
    // D~ = D * lambda^2 / c
    CHECK(convert_dispersion(7000.0, 1550.0) == doctest::Approx(56097.1417).epsilon(1e-8));
    CHECK(convert_dispersion(7000.0, 775.0) == doctest::Approx(14024.2854).epsilon(1e-8));
    CHECK(convert_dispersion(0.0, 1550.0) == 0.0);
    CHECK(convert_dispersion(-7000.0, 1550.0) == -convert_dispersion(7000.0, 1550.0));

    CHECK_THROWS_AS(convert_dispersion(std::nan(""), 1550.0), std::invalid_argument);
    CHECK_THROWS_AS(convert_dispersion(7000.0, std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
    CHECK_THROWS_AS(convert_dispersion(7000.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(convert_dispersion(7000.0, -1550.0), std::invalid_argument);
}

TEST_CASE("spectral_resolution: sigma_T / |D|") {
    CHECK(spectral_resolution(50.0, 7000.0) == doctest::Approx(7.142857e-3).epsilon(1e-6));
    CHECK(spectral_resolution(0.0, 7000.0) == 0.0);
    CHECK(spectral_resolution(70.0, 7000.0) == doctest::Approx(1.0e-2).epsilon(1e-9));
    CHECK(spectral_resolution(50.0, -7000.0) == spectral_resolution(50.0, 7000.0));
    CHECK_THROWS_AS(spectral_resolution(50.0, 0.0), std::invalid_argument);
}

TEST_CASE("sample_pair: constructive correlations") {
    SourceParams src;  // defaults: sigma_corr_nu = 0

    SUBCASE("frequency sum conserved when sigma_corr_nu = 0") {
        double worst = 0.0;
        for (std::uint64_t i = 0; i < 100000; ++i) {
            PairStream rng(11, i);
            const PhotonPair p = sample_pair(src, rng);
            worst = std::max(worst, std::abs(p.nu_a + p.nu_b - src.nu_pump));
        }
        CHECK(worst <= 1e-12 * src.nu_pump);
    }

    SUBCASE("degenerate widths pin the frequencies") {
        src.sigma_single = 0.0;
        src.sigma_corr_nu = 0.0;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            PairStream rng(12, i);
            const PhotonPair p = sample_pair(src, rng);
            CHECK(p.nu_a == src.nu_center);
            CHECK(p.nu_b == src.nu_center);
        }
    }

    SUBCASE("zero sigma_corr_t makes the arm times identical") {
        src.sigma_corr_t = 0.0;
        for (std::uint64_t i = 0; i < 1000; ++i) {
            PairStream rng(13, i);
            const PhotonPair p = sample_pair(src, rng);
            CHECK(p.t_a == p.t_b);
            CHECK(p.t_a == p.t_emit);
        }
    }

    SUBCASE("sampled moments match the declared distributions") {
        const std::uint64_t n = 100000;
        double sum_nu = 0.0, sum_nu2 = 0.0, sum_t = 0.0, sum_dt2 = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            PairStream rng(14, i);
            const PhotonPair p = sample_pair(src, rng);
            sum_nu += p.nu_a - src.nu_center;
            sum_nu2 += (p.nu_a - src.nu_center) * (p.nu_a - src.nu_center);
            sum_t += p.t_emit;
            sum_dt2 += (p.t_a - p.t_b) * (p.t_a - p.t_b);
            CHECK(p.t_emit >= 0.0);
            CHECK(p.t_emit < src.emission_window);
        }
        const double mean_nu = sum_nu / n;
        const double std_nu = std::sqrt(sum_nu2 / n - mean_nu * mean_nu);
        CHECK(std::abs(mean_nu) <= 3.0 * src.sigma_single / std::sqrt(double(n)));
        CHECK(std_nu == doctest::Approx(src.sigma_single).epsilon(0.03));
        // uniform emission time: mean W/2 within 3 sigma of the mean estimator
        const double mean_t = sum_t / n;
        const double se_t = src.emission_window / std::sqrt(12.0 * double(n));
        CHECK(std::abs(mean_t - 0.5 * src.emission_window) <= 3.0 * se_t);
        CHECK(std::sqrt(sum_dt2 / n) == doctest::Approx(src.sigma_corr_t).epsilon(0.03));
    }

    SUBCASE("fixed stream reproduces the pair") {
        PairStream r1(99, 7), r2(99, 7);
        const PhotonPair a = sample_pair(src, r1);
        const PhotonPair b = sample_pair(src, r2);
        CHECK(a.t_emit == b.t_emit);
        CHECK(a.t_a == b.t_a);
        CHECK(a.nu_a == b.nu_a);
        CHECK(a.nu_b == b.nu_b);
    }
}

TEST_CASE("dispersed_arrival: exact affine map") {
    const double d_tilde = convert_dispersion(7000.0, 1550.0);

    CHECK(dispersed_arrival(0.0, 1e-3, d_tilde, 0.0) == doctest::Approx(56.0971417).epsilon(1e-8));

    PairStream rng(5, 0);
    for (int i = 0; i < 200; ++i) {
        const double t = rng.normal(0.0, 1000.0);
        const double nu0 = rng.normal(193.4, 1.0);
        const double nu = nu0 + rng.normal(0.0, 0.3);
        const double dtl = rng.normal(0.0, 60000.0);
        // zero detuning: T = t for any dispersion
        CHECK(dispersed_arrival(t, nu0, dtl, nu0) == t);
        // flipping the dispersion sign negates the delay
        const double plus = dispersed_arrival(t, nu, dtl, nu0) - t;
        const double minus = dispersed_arrival(t, nu, -dtl, nu0) - t;
        CHECK(plus == -minus);
        // affine in nu: T(nu) - T(nu') = D~ (nu - nu')
        const double nu2 = nu0 + rng.normal(0.0, 0.3);
        const double lhs = dispersed_arrival(t, nu, dtl, nu0) - dispersed_arrival(t, nu2, dtl, nu0);
        CHECK(lhs == doctest::Approx(dtl * (nu - nu2)).epsilon(1e-9));
    }
}

TEST_CASE("two-arm cancellation of the intrinsic time uncertainty") {
    SourceParams src;
    src.sigma_corr_t = 0.0;  // t_a = t_b
    const double d_tilde = convert_dispersion(7000.0, 1550.0);

    SUBCASE("exact cancellation at sigma_corr_nu = 0") {
        for (std::uint64_t i = 0; i < 20000; ++i) {
            PairStream rng(21, i);
            const PhotonPair p = sample_pair(src, rng);
            const double ta = dispersed_arrival(p.t_a, p.nu_a, d_tilde, src.nu_center);
            const double tb = dispersed_arrival(p.t_b, p.nu_b, -d_tilde, src.nu_center);
            CHECK(ta - tb == 0.0);
        }
    }

    SUBCASE("residual equals D~ times the frequency-sum error") {
        src.sigma_corr_nu = 1e-3;
        for (std::uint64_t i = 0; i < 20000; ++i) {
            PairStream rng(22, i);
            const PhotonPair p = sample_pair(src, rng);
            const double ta = dispersed_arrival(p.t_a, p.nu_a, d_tilde, src.nu_center);
            const double tb = dispersed_arrival(p.t_b, p.nu_b, -d_tilde, src.nu_center);
            const double expected = d_tilde * (p.nu_a + p.nu_b - src.nu_pump);
            CHECK(ta - tb == doctest::Approx(expected).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("detect: losses and jitter") {
    OpticalPath path;  // 5 dB insertion, 0 dB channel
    DetectorParams det;

    SUBCASE("lossless, jitter-free detection is exact") {
        path.insertion_loss_db = 0.0;
        det.jitter_sigma = 0.0;
        PairStream rng(31, 0);
        const DetectionEvent ev = detect(123.25, Party::Alice, Basis::Frequency, det, path, rng);
        CHECK(ev.detected);
        CHECK(ev.timestamp == 123.25);
        CHECK(ev.party == Party::Alice);
        CHECK(ev.basis == Basis::Frequency);
    }

    SUBCASE("zero efficiency never detects") {
        det.efficiency = 0.0;
        for (std::uint64_t i = 0; i < 2000; ++i) {
            PairStream rng(32, i);
            CHECK_FALSE(detect(0.0, Party::Bob, Basis::Time, det, path, rng).detected);
        }
    }

    SUBCASE("jitter variance matches the configured sigma") {
        path.insertion_loss_db = 0.0;
        const std::uint64_t n = 100000;
        double sum = 0.0, sum2 = 0.0;
        for (std::uint64_t i = 0; i < n; ++i) {
            PairStream rng(33, i);
            const DetectionEvent ev = detect(500.0, Party::Bob, Basis::Time, det, path, rng);
            REQUIRE(ev.detected);
            const double d = ev.timestamp - 500.0;
            sum += d;
            sum2 += d * d;
        }
        const double mean = sum / n;
        CHECK(sum2 / n - mean * mean == doctest::Approx(4900.0).epsilon(0.05));
    }

    SUBCASE("detection rate follows the loss product") {
        // frequency basis: insertion + channel = 10 dB -> p = 0.1
        path.channel_loss_db = 5.0;
        const std::uint64_t n = 100000;
        std::uint64_t hits_freq = 0, hits_time = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            PairStream rf(34, i), rt(35, i);
            hits_freq += detect(0.0, Party::Bob, Basis::Frequency, det, path, rf).detected;
            hits_time += detect(0.0, Party::Bob, Basis::Time, det, path, rt).detected;
        }
        const double p_freq = 0.1, p_time = std::pow(10.0, -0.5);
        CHECK(std::abs(double(hits_freq) / n - p_freq) <=
              3.0 * std::sqrt(p_freq * (1 - p_freq) / double(n)));
        CHECK(std::abs(double(hits_time) / n - p_time) <=
              3.0 * std::sqrt(p_time * (1 - p_time) / double(n)));
    }
}

TEST_CASE("parameter validation") {
    SourceParams src;
    src.emission_window = 0.0;
    CHECK_THROWS_WITH_AS(validate(src), doctest::Contains("emission_window"), std::invalid_argument);
    src = SourceParams{};
    src.nu_pump = -1.0;
    CHECK_THROWS_AS(validate(src), std::invalid_argument);

    DetectorParams det;
    det.jitter_sigma = -1.0;
    CHECK_THROWS_WITH_AS(validate(det, "detectors.bob"), doctest::Contains("detectors.bob"),
                         std::invalid_argument);
    det = DetectorParams{};
    det.efficiency = 1.5;
    CHECK_THROWS_AS(validate(det), std::invalid_argument);

    OpticalPath path;
    path.wavelength_nm = 0.0;
    CHECK_THROWS_AS(validate(path), std::invalid_argument);
    path = OpticalPath{};
    path.channel_loss_db = -3.0;
    CHECK_THROWS_AS(validate(path), std::invalid_argument);
}
