#include "kgc/run_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "kgc/errors.hpp"
#include "kgc/experiments.hpp"

namespace kgc {

namespace {

struct Field {
    const char* key;
    std::function<std::string(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
};

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("invalid numeric value for key '" + key + "': " + v);
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return static_cast<int>(d);
    } catch (const std::exception&) {
        throw ConfigError("invalid integer value for key '" + key + "': " + v);
    }
}

#define KGC_FIELD_D(name)                                                      \
    Field{#name, [](const RunConfig& c) { return format_double(c.name); },     \
          [](RunConfig& c, const std::string& v) { c.name = to_double(#name, v); }}
#define KGC_FIELD_I(name)                                                      \
    Field{#name, [](const RunConfig& c) { return std::to_string(c.name); },    \
          [](RunConfig& c, const std::string& v) { c.name = to_int(#name, v); }}
#define KGC_FIELD_S(name)                                                      \
    Field{#name, [](const RunConfig& c) { return c.name; },                    \
          [](RunConfig& c, const std::string& v) { c.name = v; }}

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        KGC_FIELD_D(mass_kg),      KGC_FIELD_D(L0_m),
        KGC_FIELD_D(beta),         KGC_FIELD_D(c_m_per_s),
        KGC_FIELD_D(hbar_J_s),     KGC_FIELD_D(t_s),
        KGC_FIELD_D(x_lo_m),       KGC_FIELD_D(x_hi_m),
        KGC_FIELD_I(num_x),        KGC_FIELD_I(n_max),
        KGC_FIELD_I(grid_points),  KGC_FIELD_I(precision_bits),
        KGC_FIELD_D(regime_threshold), KGC_FIELD_I(max_terms),
        KGC_FIELD_D(nu),           KGC_FIELD_D(log10_z_lo),
        KGC_FIELD_D(log10_z_hi),   KGC_FIELD_I(sweep_steps),
        KGC_FIELD_I(workers),      KGC_FIELD_S(scenario),
        KGC_FIELD_S(output_dir),
    };
    return f;
}

#undef KGC_FIELD_D
#undef KGC_FIELD_I
#undef KGC_FIELD_S

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

bool scenario_known(const std::string& name) {
    for (const char* s : {"current-diff", "coefficients", "oscillations", "bessel-sweep",
                          "limit-check", "convergence"})
        if (name == s) return true;
    return false;
}

void RunConfig::validate() const {
    if (!(mass_kg > 0)) throw ConfigError("mass_kg must be positive");
    if (!(L0_m > 0)) throw ConfigError("L0_m must be positive");
    if (!(beta > 0 && beta < 1)) throw ConfigError("beta must lie in the open interval (0, 1)");
    if (!(c_m_per_s > 0)) throw ConfigError("c_m_per_s must be positive");
    if (!(hbar_J_s > 0)) throw ConfigError("hbar_J_s must be positive");
    if (t_s < 0) throw ConfigError("t_s must be >= 0");
    if (!(x_lo_m >= 0) || !(x_hi_m > x_lo_m)) throw ConfigError("need 0 <= x_lo_m < x_hi_m");
    if (num_x < 2) throw ConfigError("num_x must be >= 2");
    if (n_max < 1) throw ConfigError("n_max must be >= 1");
    if (grid_points < 8) throw ConfigError("grid_points must be >= 8");
    if (precision_bits < 53) throw ConfigError("precision_bits must be >= 53");
    if (max_terms < 1) throw ConfigError("max_terms must be >= 1");
    if (!(regime_threshold > 0)) throw ConfigError("regime_threshold must be positive");
    if (!(nu >= 0)) throw ConfigError("nu must be >= 0");
    if (!(log10_z_hi > log10_z_lo)) throw ConfigError("need log10_z_lo < log10_z_hi");
    if (sweep_steps < 2) throw ConfigError("sweep_steps must be >= 2");
    if (workers < 0) throw ConfigError("workers must be >= 0");
    if (!scenario_known(scenario)) throw ConfigError("unknown scenario: " + scenario);
}

PhysicalConfig RunConfig::physical() const {
    PhysicalConfig p;
    p.mass = mass_kg;
    p.L0 = L0_m;
    p.beta = beta;
    p.c = c_m_per_s;
    p.hbar = hbar_J_s;
    return p;
}

bessel::AsymptoticPolicy RunConfig::policy() const {
    bessel::AsymptoticPolicy pol;
    pol.max_terms = max_terms;
    pol.regime_threshold = regime_threshold;
    pol.precision_bits = precision_bits;
    return pol;
}

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream out;
    for (const Field& f : fields()) out << f.key << " = " << f.get(cfg) << "\n";
    return out.str();
}

void apply_overrides(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        bool found = false;
        for (const Field& f : fields()) {
            if (key == f.key) {
                f.set(cfg, value);
                found = true;
                break;
            }
        }
        if (!found) throw ConfigError("unknown configuration key: " + key);
    }
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::map<std::string, std::string> kv;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (kv.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key " + key);
        kv[key] = value;
    }
    apply_overrides(cfg, kv);
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

int run(const RunConfig& cfg) {
    try {
        cfg.validate();
        const PhysicalConfig phys = cfg.physical();
        const bessel::AsymptoticPolicy pol = cfg.policy();
        const unsigned workers = static_cast<unsigned>(cfg.workers);

        ExperimentReport rep;
        if (cfg.scenario == "current-diff") {
            rep = current_difference_scan(phys, cfg.t_s, cfg.x_lo_m, cfg.x_hi_m, cfg.num_x,
                                          cfg.n_max, cfg.grid_points, pol, workers);
        } else if (cfg.scenario == "coefficients") {
            rep = coefficient_profile(phys, cfg.n_max, cfg.grid_points, pol, workers);
        } else if (cfg.scenario == "oscillations") {
            rep = oscillation_report(phys, cfg.grid_points, pol);
        } else if (cfg.scenario == "bessel-sweep") {
            bessel::AsymptoticPolicy swp = pol;
            // The sweep spans nu^2/z up to ~0.1; widen the gate accordingly.
            swp.regime_threshold = std::max(pol.regime_threshold, 0.12);
            rep = bessel_precision_sweep(bessel::Order(cfg.nu, bessel::BranchSign::positive),
                                         cfg.log10_z_lo, cfg.log10_z_hi, cfg.sweep_steps, swp);
        } else if (cfg.scenario == "limit-check") {
            rep = limit_check(phys, pol);
        } else {
            rep = convergence_study(phys, cfg.n_max, cfg.grid_points, pol, workers);
        }
        rep.config_snapshot = emit_config(cfg);
        const auto paths = write_report(rep, cfg.output_dir);
        for (const auto& p : paths) std::cout << "wrote " << p << "\n";
        for (const auto& [k, v] : rep.scalars)
            std::cout << k << " = " << format_double(v) << "\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "error [" << cfg.scenario << "]: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kgc
