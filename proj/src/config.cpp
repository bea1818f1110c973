#include "ftqkd/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

namespace ftqkd {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& origin, const std::string& what) {
    throw ConfigError(origin + ": " + what);
}

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n') c = ' ';
    return s;
}

void check_keys(const json& j, const std::string& origin, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known) bad(origin, "unknown key '" + path + item.key() + "'");
    }
}

double num_field(const json& j, const std::string& origin, const std::string& path, const char* key,
                 double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) bad(origin, "field '" + path + key + "' must be a number");
    return v.get<double>();
}

std::uint64_t count_field(const json& j, const std::string& origin, const char* key,
                          std::uint64_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_unsigned()) bad(origin, std::string("field '") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

const json& object_field(const json& j, const std::string& origin, const char* key) {
    const json& v = j.at(key);
    if (!v.is_object()) bad(origin, std::string("field '") + key + "' must be an object");
    return v;
}

std::string string_field(const json& j, const std::string& origin, const std::string& path,
                         const char* key) {
    const json& v = j.at(key);
    if (!v.is_string()) bad(origin, "field '" + path + key + "' must be a string");
    return v.get<std::string>();
}

void apply_source(SourceParams& s, const json& j, const std::string& origin) {
    check_keys(j, origin, "source.",
               {"nu_pump", "nu_center", "sigma_single", "sigma_corr_nu", "emission_window",
                "sigma_corr_t"});
    const bool had_center = j.contains("nu_center");
    s.nu_pump = num_field(j, origin, "source.", "nu_pump", s.nu_pump);
    s.nu_center = num_field(j, origin, "source.", "nu_center", s.nu_center);
    s.sigma_single = num_field(j, origin, "source.", "sigma_single", s.sigma_single);
    s.sigma_corr_nu = num_field(j, origin, "source.", "sigma_corr_nu", s.sigma_corr_nu);
    s.emission_window = num_field(j, origin, "source.", "emission_window", s.emission_window);
    s.sigma_corr_t = num_field(j, origin, "source.", "sigma_corr_t", s.sigma_corr_t);
    if (j.contains("nu_pump") && !had_center) s.nu_center = s.nu_pump / 2.0;
}

void apply_detector(DetectorParams& d, const json& j, const std::string& origin,
                    const std::string& path) {
    check_keys(j, origin, path, {"jitter_sigma", "efficiency"});
    d.jitter_sigma = num_field(j, origin, path, "jitter_sigma", d.jitter_sigma);
    d.efficiency = num_field(j, origin, path, "efficiency", d.efficiency);
}

void apply_loss(PathPair::Loss& l, const json& j, const std::string& origin,
                const std::string& path) {
    check_keys(j, origin, path, {"insertion_loss_db", "channel_loss_db"});
    l.insertion_loss_db = num_field(j, origin, path, "insertion_loss_db", l.insertion_loss_db);
    l.channel_loss_db = num_field(j, origin, path, "channel_loss_db", l.channel_loss_db);
}

void apply_paths(PathPair& p, const json& j, const std::string& origin) {
    check_keys(j, origin, "paths.", {"dispersion_ps_per_nm", "wavelength_nm", "alice", "bob"});
    p.dispersion_ps_per_nm =
        num_field(j, origin, "paths.", "dispersion_ps_per_nm", p.dispersion_ps_per_nm);
    p.wavelength_nm = num_field(j, origin, "paths.", "wavelength_nm", p.wavelength_nm);
    if (j.contains("alice")) apply_loss(p.alice, object_field(j, origin, "alice"), origin, "paths.alice.");
    if (j.contains("bob")) apply_loss(p.bob, object_field(j, origin, "bob"), origin, "paths.bob.");
}

void apply_eve(EveStrategy& e, const json& j, const std::string& origin) {
    check_keys(j, origin, "eve.",
               {"mode", "measure_basis_policy", "eve_jitter_sigma", "resend_conjugate_sigma"});
    if (j.contains("mode")) {
        const std::string s = string_field(j, origin, "eve.", "mode");
        if (s == "none")
            e.mode = EveMode::None;
        else if (s == "intercept_resend")
            e.mode = EveMode::InterceptResend;
        else
            bad(origin, "eve.mode must be 'none' or 'intercept_resend'");
    }
    if (j.contains("measure_basis_policy")) {
        const std::string s = string_field(j, origin, "eve.", "measure_basis_policy");
        try {
            e.measure_basis_policy = parse_eve_policy(s);
        } catch (const ConfigError&) {
            bad(origin, "eve.measure_basis_policy must be 'always_time', 'always_frequency' or 'random'");
        }
    }
    e.eve_jitter_sigma = num_field(j, origin, "eve.", "eve_jitter_sigma", e.eve_jitter_sigma);
    if (j.contains("resend_conjugate_sigma")) {
        const json& v = j.at("resend_conjugate_sigma");
        if (v.is_null())
            e.resend_conjugate_sigma.reset();
        else if (v.is_number())
            e.resend_conjugate_sigma = v.get<double>();
        else
            bad(origin, "field 'eve.resend_conjugate_sigma' must be a number or null");
    }
}

}  // namespace

SimConfig default_config() { return SimConfig{}; }

void validate(const SimConfig& cfg) {
    try {
        validate(cfg.source, "source");
        validate(cfg.detectors.alice, "detectors.alice");
        validate(cfg.detectors.bob, "detectors.bob");
        validate(cfg.paths.alice_path(), "paths.alice");
        validate(cfg.paths.bob_path(), "paths.bob");
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!(cfg.paths.dispersion_ps_per_nm > 0.0))
        throw ConfigError("paths.dispersion_ps_per_nm must be > 0");
    if (!(cfg.source.sigma_single > 0.0))
        throw ConfigError("source.sigma_single must be > 0 when frequency-basis keying is enabled");
    if (cfg.pairs < 1) throw ConfigError("pairs must be >= 1");
    if (!(cfg.f_ec >= 1.0)) throw ConfigError("f_ec must be >= 1");
    if (!(cfg.delta_scale > 0.0)) throw ConfigError("delta_scale must be > 0");
    if (!(cfg.eve.eve_jitter_sigma >= 0.0)) throw ConfigError("eve.eve_jitter_sigma must be >= 0");
    if (cfg.eve.resend_conjugate_sigma && !(*cfg.eve.resend_conjugate_sigma >= 0.0))
        throw ConfigError("eve.resend_conjugate_sigma must be >= 0");
}

void apply_json(SimConfig& cfg, const std::string& json_text, const std::string& origin) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(origin, one_line(e.what()));
    }
    if (!j.is_object()) bad(origin, "config root must be a JSON object");
    check_keys(j, origin, "",
               {"source", "detectors", "paths", "eve", "pairs", "seed", "f_ec", "delta_scale"});
    if (j.contains("source")) apply_source(cfg.source, object_field(j, origin, "source"), origin);
    if (j.contains("detectors")) {
        const json& d = object_field(j, origin, "detectors");
        check_keys(d, origin, "detectors.", {"alice", "bob"});
        if (d.contains("alice"))
            apply_detector(cfg.detectors.alice, object_field(d, origin, "alice"), origin,
                           "detectors.alice.");
        if (d.contains("bob"))
            apply_detector(cfg.detectors.bob, object_field(d, origin, "bob"), origin,
                           "detectors.bob.");
    }
    if (j.contains("paths")) apply_paths(cfg.paths, object_field(j, origin, "paths"), origin);
    if (j.contains("eve")) apply_eve(cfg.eve, object_field(j, origin, "eve"), origin);
    cfg.pairs = count_field(j, origin, "pairs", cfg.pairs);
    cfg.seed = count_field(j, origin, "seed", cfg.seed);
    cfg.f_ec = num_field(j, origin, "", "f_ec", cfg.f_ec);
    cfg.delta_scale = num_field(j, origin, "", "delta_scale", cfg.delta_scale);
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    SimConfig cfg = default_config();
    apply_json(cfg, buffer.str(), path);
    return cfg;
}

EveMode parse_eve_mode(const std::string& s) {
    if (s == "none") return EveMode::None;
    if (s == "intercept_resend") return EveMode::InterceptResend;
    throw ConfigError("eve mode must be 'none' or 'intercept_resend', got '" + s + "'");
}

EvePolicy parse_eve_policy(const std::string& s) {
    if (s == "time" || s == "always_time") return EvePolicy::AlwaysTime;
    if (s == "frequency" || s == "always_frequency") return EvePolicy::AlwaysFrequency;
    if (s == "random") return EvePolicy::Random;
    throw ConfigError("eve policy must be 'time', 'frequency' or 'random', got '" + s + "'");
}

std::vector<double> parse_range_spec(const std::string& spec) {
    const auto parse_num = [&spec](const std::string& s) {
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (...) {
            throw ConfigError("bad range '" + spec + "'");
        }
        if (pos != s.size() || !std::isfinite(v)) throw ConfigError("bad range '" + spec + "'");
        return v;
    };

    std::vector<std::string> parts;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, ':')) parts.push_back(token);

    if (parts.size() == 1) return {parse_num(parts[0])};
    if (parts.size() != 3)
        throw ConfigError("range must be VALUE or START:STOP:STEP, got '" + spec + "'");

    const double start = parse_num(parts[0]);
    const double stop = parse_num(parts[1]);
    const double step = parse_num(parts[2]);
    if (!(step > 0.0)) throw ConfigError("range step must be > 0");
    if (stop < start) throw ConfigError("range stop must be >= start");

    const double count = std::floor((stop - start) / step + 1e-9);
    if (count > 1e6) throw ConfigError("range '" + spec + "' has too many points");
    std::vector<double> values;
    for (long long k = 0; k <= static_cast<long long>(count); ++k)
        values.push_back(start + static_cast<double>(k) * step);
    return values;
}

}  // namespace ftqkd
