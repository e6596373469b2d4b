#pragma once

// Run configuration: flat key=value files, flag overrides, validation,
// round-trippable emission, and scenario dispatch.

#include <map>
#include <string>

#include "kgc/bessel_im.hpp"
#include "kgc/cavity_states.hpp"

namespace kgc {

struct RunConfig {
    double mass_kg = 1e-30;
    double L0_m = 1e-6;
    double beta = 0.01;
    double c_m_per_s = 3e8;
    double hbar_J_s = 1.05e-34;
    double t_s = 1e-15;
    double x_lo_m = 0.0;
    double x_hi_m = 1e-8;
    int num_x = 201;
    int n_max = 15000;
    int grid_points = 262144;
    int precision_bits = 256;
    double regime_threshold = 1e-2;
    int max_terms = 4;
    double nu = 314.15926535897933;  // bessel-sweep order
    double log10_z_lo = 6.0;
    double log10_z_hi = 13.5;
    int sweep_steps = 151;
    int workers = 0;  // 0: hardware concurrency
    std::string scenario = "coefficients";
    std::string output_dir = ".";

    void validate() const;  // throws ConfigError
    PhysicalConfig physical() const;
    bessel::AsymptoticPolicy policy() const;
};

// Known scenario names.
bool scenario_known(const std::string& name);

// key = value text, one line per key, full round-trip precision.
std::string emit_config(const RunConfig& cfg);

// Parse `emit_config`-style text; unknown keys are rejected with the
// offending key in the message. Starts from defaults.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Apply key=value overrides (flag layer) on top of an existing config.
void apply_overrides(RunConfig& cfg, const std::map<std::string, std::string>& kv);

// Dispatch the configured scenario, write CSVs/summary/snapshot into
// output_dir; returns 0 on success, nonzero after printing a diagnostic.
int run(const RunConfig& cfg);

}  // namespace kgc
