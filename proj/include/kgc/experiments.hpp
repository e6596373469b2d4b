#pragma once

// Scenario orchestration: current-difference scan, coefficient profile,
// oscillation count, non-relativistic limit checks, convergence studies and
// the Bessel precision sweep. Each scenario returns a report of tables plus
// derived scalars; writers emit CSV tables and a plain-text summary.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kgc/bessel_im.hpp"
#include "kgc/cavity_states.hpp"
#include "kgc/spectral.hpp"

namespace kgc {

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct ExperimentReport {
    std::string scenario;
    std::string config_snapshot;  // resolved flat key=value text
    std::vector<Table> tables;
    std::vector<std::pair<std::string, double>> scalars;
    std::vector<std::string> notes;

    double scalar(const std::string& key) const;
    const Table& table(const std::string& name) const;
};

// j_e from the moving state, j_s from the static superposition of the same
// initial state, their difference on [x_lo, x_hi], light-crossing time and
// the relative difference at x_hi.
ExperimentReport current_difference_scan(const PhysicalConfig& cfg, double t, double x_lo,
                                         double x_hi, int num_x, int n_max, int grid_points,
                                         const bessel::AsymptoticPolicy& policy,
                                         unsigned workers = 0);

// |c_n| profile with peak index and tail-ratio diagnostics; includes |b_n|.
ExperimentReport coefficient_profile(const PhysicalConfig& cfg, int n_max, int grid_points,
                                     const bessel::AsymptoticPolicy& policy,
                                     unsigned workers = 0);

// Re Psi_{-,1}(0, x) samples, direct zero-crossing count and the analytic
// oscillation estimates side by side.
ExperimentReport oscillation_report(const PhysicalConfig& cfg, int grid_points,
                                    const bessel::AsymptoticPolicy& policy);

// (log10 z, d1, d2) rows for the double and extended arithmetic paths.
ExperimentReport bessel_precision_sweep(const bessel::Order& nu, double log10_z_lo,
                                        double log10_z_hi, int steps,
                                        const bessel::AsymptoticPolicy& policy);

// Non-relativistic limit diagnostics: Schroedinger overlap, phase agreement,
// closed-form current match, weak-value comparison.
ExperimentReport limit_check(const PhysicalConfig& cfg, const bessel::AsymptoticPolicy& policy);

// Grid-doubling stability of c_n, continuity-residual convergence order and
// reconstruction error versus n_max.
ExperimentReport convergence_study(const PhysicalConfig& cfg, int n_max, int grid_points,
                                   const bessel::AsymptoticPolicy& policy, unsigned workers = 0);

// Writes <scenario>_<timestamp>[_<table>].csv files plus a .txt summary and a
// .config snapshot echo into outdir; returns the paths written. Tables are
// deterministic for identical configuration snapshots.
std::vector<std::string> write_report(const ExperimentReport& report, const std::string& outdir);

// Full round-trip precision formatting used for all CSV numbers.
std::string format_double(double v);

}  // namespace kgc
