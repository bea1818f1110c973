#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftqkd/adversary.hpp"
#include "ftqkd/model.hpp"

namespace ftqkd {

/// Configuration or usage problem; maps to exit code 1 in the CLI.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The two dispersive arms. A single magnitude parameter fixes both
/// dispersions: Alice's arm gets +D, Bob's gets -D, so the intrinsic
/// timing uncertainty of the pair cancels between the arms.
struct PathPair {
    double dispersion_ps_per_nm = 7000.0;  // magnitude
    double wavelength_nm = 1550.0;
    struct Loss {
        double insertion_loss_db = 5.0;  // dispersive module, frequency basis only
        double channel_loss_db = 0.0;
    } alice, bob;

    OpticalPath alice_path() const {
        return {dispersion_ps_per_nm, wavelength_nm, alice.insertion_loss_db, alice.channel_loss_db};
    }
    OpticalPath bob_path() const {
        return {-dispersion_ps_per_nm, wavelength_nm, bob.insertion_loss_db, bob.channel_loss_db};
    }
};

struct Detectors {
    DetectorParams alice, bob;
};

/// Full experiment description. Field names mirror the JSON config schema.
struct SimConfig {
    SourceParams source;
    Detectors detectors;
    PathPair paths;
    EveStrategy eve;
    std::uint64_t pairs = 1000000;
    std::uint64_t seed = 12345;
    double f_ec = 1.16;
    double delta_scale = 2.0;
};

SimConfig default_config();

/// Throws ConfigError naming the offending field path.
void validate(const SimConfig& cfg);

/// Apply a JSON document on top of cfg. Unknown keys are rejected; `origin`
/// is used in error messages (a file name or "<inline>").
void apply_json(SimConfig& cfg, const std::string& json_text, const std::string& origin);

/// Read, parse, and apply a JSON config file over the defaults.
/// The result is not yet validated; callers validate after CLI overrides.
SimConfig load_config(const std::string& path);

/// Parse a sweep range "start:stop:step" (stop included when aligned with
/// the step) or a single value.
std::vector<double> parse_range_spec(const std::string& spec);

EveMode parse_eve_mode(const std::string& s);      // "none" | "intercept_resend"
EvePolicy parse_eve_policy(const std::string& s);  // "time" | "frequency" | "random"

}  // namespace ftqkd
