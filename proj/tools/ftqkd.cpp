// ftqkd: simulator and analytic toolbox for entanglement-based
// frequency-time coding QKD.
//
//   sweep       analytic QBER / key-rate table over detector jitters
//   simulate    Monte Carlo session (no adversary unless configured)
//   attack      Monte Carlo session with the intercept-resend adversary
//   threshold   QBER at which the key rate crosses zero
//   resolution  spectral resolution of the dispersive measurement
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime failure.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ftqkd/analytics.hpp"
#include "ftqkd/config.hpp"
#include "ftqkd/csv.hpp"
#include "ftqkd/protocol.hpp"

namespace {

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n') c = ' ';
    return s;
}

unsigned env_default_threads() {
    if (const char* env = std::getenv("FTQKD_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

struct SessionCli {
    std::string config_path;
    std::string out = "-";
    std::uint64_t pairs = 0;
    std::uint64_t seed = 0;
    double jitter = 0.0;
    double efficiency = 0.0;
    double dispersion = 0.0;
    double wavelength = 0.0;
    double insertion_loss = 0.0;
    double channel_loss = 0.0;
    double emission_window = 0.0;
    double sigma_single = 0.0;
    double sigma_corr_nu = 0.0;
    double sigma_corr_t = 0.0;
    double nu_pump = 0.0;
    double f_ec = 0.0;
    double delta_scale = 0.0;
    std::string eve_mode;
    std::string eve_policy;
    double eve_jitter = 0.0;
    double eve_conjugate_sigma = 0.0;
    unsigned threads = 0;
};

void add_session_options(CLI::App* cmd, SessionCli& v) {
    cmd->add_option("--config", v.config_path, "JSON config file; flags override file values");
    cmd->add_option("--pairs", v.pairs, "number of emitted pairs");
    cmd->add_option("--seed", v.seed, "master 64-bit seed");
    cmd->add_option("--jitter", v.jitter, "detector jitter sigma, ps (both parties)");
    cmd->add_option("--efficiency", v.efficiency, "detector efficiency (both parties)");
    cmd->add_option("--dispersion", v.dispersion, "dispersion magnitude, ps/nm (+D Alice, -D Bob)");
    cmd->add_option("--wavelength", v.wavelength, "carrier wavelength, nm");
    cmd->add_option("--insertion-loss", v.insertion_loss, "dispersive-module loss, dB (both arms)");
    cmd->add_option("--channel-loss", v.channel_loss, "channel loss, dB (both arms)");
    cmd->add_option("--emission-window", v.emission_window, "pair emission window, ps");
    cmd->add_option("--sigma-single", v.sigma_single, "per-photon spectral std, 1/ps");
    cmd->add_option("--sigma-corr-nu", v.sigma_corr_nu, "std of nu_a + nu_b - nu_pump, 1/ps");
    cmd->add_option("--sigma-corr-t", v.sigma_corr_t, "std of t_a - t_b, ps");
    cmd->add_option("--nu-pump", v.nu_pump, "pump frequency, 1/ps (nu_0 follows as nu_pump/2)");
    cmd->add_option("--f", v.f_ec, "error correction efficiency f");
    cmd->add_option("--delta-scale", v.delta_scale, "jitter-to-delta calibration constant");
    cmd->add_option("--eve-mode", v.eve_mode, "none | intercept_resend");
    cmd->add_option("--eve-policy", v.eve_policy, "time | frequency | random");
    cmd->add_option("--eve-jitter", v.eve_jitter, "Eve's measurement jitter, ps");
    cmd->add_option("--eve-conjugate-sigma", v.eve_conjugate_sigma,
                    "spread of the resent conjugate variable (ps or 1/ps)");
    cmd->add_option("--threads", v.threads, "worker threads (default: FTQKD_THREADS or 1)");
    cmd->add_option("--out", v.out, "CSV destination, '-' for stdout");
}

ftqkd::SimConfig build_config(const CLI::App* cmd, const SessionCli& v) {
    ftqkd::SimConfig cfg =
        cmd->count("--config") ? ftqkd::load_config(v.config_path) : ftqkd::default_config();

    if (cmd->count("--pairs")) cfg.pairs = v.pairs;
    if (cmd->count("--seed")) cfg.seed = v.seed;
    if (cmd->count("--jitter")) {
        cfg.detectors.alice.jitter_sigma = v.jitter;
        cfg.detectors.bob.jitter_sigma = v.jitter;
    }
    if (cmd->count("--efficiency")) {
        cfg.detectors.alice.efficiency = v.efficiency;
        cfg.detectors.bob.efficiency = v.efficiency;
    }
    if (cmd->count("--dispersion")) cfg.paths.dispersion_ps_per_nm = v.dispersion;
    if (cmd->count("--wavelength")) cfg.paths.wavelength_nm = v.wavelength;
    if (cmd->count("--insertion-loss")) {
        cfg.paths.alice.insertion_loss_db = v.insertion_loss;
        cfg.paths.bob.insertion_loss_db = v.insertion_loss;
    }
    if (cmd->count("--channel-loss")) {
        cfg.paths.alice.channel_loss_db = v.channel_loss;
        cfg.paths.bob.channel_loss_db = v.channel_loss;
    }
    if (cmd->count("--emission-window")) cfg.source.emission_window = v.emission_window;
    if (cmd->count("--sigma-single")) cfg.source.sigma_single = v.sigma_single;
    if (cmd->count("--sigma-corr-nu")) cfg.source.sigma_corr_nu = v.sigma_corr_nu;
    if (cmd->count("--sigma-corr-t")) cfg.source.sigma_corr_t = v.sigma_corr_t;
    if (cmd->count("--nu-pump")) {
        cfg.source.nu_pump = v.nu_pump;
        cfg.source.nu_center = v.nu_pump / 2.0;
    }
    if (cmd->count("--f")) cfg.f_ec = v.f_ec;
    if (cmd->count("--delta-scale")) cfg.delta_scale = v.delta_scale;
    if (cmd->count("--eve-mode")) cfg.eve.mode = ftqkd::parse_eve_mode(v.eve_mode);
    if (cmd->count("--eve-policy"))
        cfg.eve.measure_basis_policy = ftqkd::parse_eve_policy(v.eve_policy);
    if (cmd->count("--eve-jitter")) cfg.eve.eve_jitter_sigma = v.eve_jitter;
    if (cmd->count("--eve-conjugate-sigma")) cfg.eve.resend_conjugate_sigma = v.eve_conjugate_sigma;
    return cfg;
}

int run_session_command(const CLI::App* cmd, const SessionCli& v, bool force_eve) {
    ftqkd::SimConfig cfg = build_config(cmd, v);
    if (force_eve && !cmd->count("--eve-mode")) cfg.eve.mode = ftqkd::EveMode::InterceptResend;
    ftqkd::validate(cfg);
    const unsigned threads = cmd->count("--threads") ? std::max(1u, v.threads) : env_default_threads();
    const ftqkd::ProtocolStats stats = ftqkd::run_session(cfg, threads);
    ftqkd::write_csv(ftqkd::stats_table(stats), v.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entanglement-based frequency-time QKD simulator"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "analytic QBER/key-rate table over jitters");
    std::string sweep_jitter;
    double sweep_dispersion = 7000.0, sweep_wavelength = 1550.0;
    double sweep_f = 1.16, sweep_gain = 1.0, sweep_delta_scale = 2.0;
    std::string sweep_out = "-";
    sweep->add_option("--jitter", sweep_jitter, "jitter values, ps: VALUE or START:STOP:STEP")
        ->required();
    sweep->add_option("--dispersion", sweep_dispersion, "dispersion magnitude, ps/nm");
    sweep->add_option("--wavelength", sweep_wavelength, "carrier wavelength, nm");
    sweep->add_option("--f", sweep_f, "error correction efficiency f");
    sweep->add_option("--gain", sweep_gain, "overall gain Q");
    sweep->add_option("--delta-scale", sweep_delta_scale, "jitter-to-delta calibration constant");
    sweep->add_option("--out", sweep_out, "CSV destination, '-' for stdout");

    // simulate / attack
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo session");
    SessionCli sim_values;
    add_session_options(simulate, sim_values);

    auto* attack = app.add_subcommand("attack", "Monte Carlo session with intercept-resend Eve");
    SessionCli attack_values;
    add_session_options(attack, attack_values);

    // threshold
    auto* threshold = app.add_subcommand("threshold", "QBER where the key rate crosses zero");
    double threshold_f = 1.0;
    threshold->add_option("--f", threshold_f, "error correction efficiency f");

    // resolution
    auto* resolution = app.add_subcommand("resolution", "spectral resolution, nm");
    double res_time = 0.0, res_dispersion = 0.0;
    resolution->add_option("--time-res", res_time, "detector time resolution, ps")->required();
    resolution->add_option("--dispersion", res_dispersion, "dispersion coefficient, ps/nm")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << one_line(e.what()) << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(sweep)) {
            const std::vector<double> jitters = ftqkd::parse_range_spec(sweep_jitter);
            const auto points = ftqkd::jitter_sweep(jitters, sweep_dispersion, sweep_wavelength,
                                                    sweep_f, sweep_gain, sweep_delta_scale);
            ftqkd::write_csv(ftqkd::sweep_table(points), sweep_out);
            std::fprintf(stderr, "# security_threshold(f=%g) = %.9g\n", sweep_f,
                         ftqkd::security_threshold(sweep_f));
            return 0;
        }
        if (app.got_subcommand(simulate)) return run_session_command(simulate, sim_values, false);
        if (app.got_subcommand(attack)) return run_session_command(attack, attack_values, true);
        if (app.got_subcommand(threshold)) {
            std::printf("%.9g\n", ftqkd::security_threshold(threshold_f));
            return 0;
        }
        if (app.got_subcommand(resolution)) {
            std::printf("%.9g\n", ftqkd::spectral_resolution(res_time, res_dispersion));
            return 0;
        }
    } catch (const ftqkd::ConfigError& e) {
        std::cerr << "error: " << one_line(e.what()) << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << one_line(e.what()) << "\n";
        return 1;
    } catch (const ftqkd::IoError& e) {
        std::cerr << "error: " << one_line(e.what()) << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << one_line(e.what()) << "\n";
        return 2;
    }
    return 0;
}
