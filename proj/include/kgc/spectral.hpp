#pragma once

// Expansion of the moving-wall initial state over static-well eigenstates,
// antiparticle-overlap checks, time evolution of the static superposition,
// and truncation estimation.

#include <complex>
#include <vector>

#include "kgc/cavity_states.hpp"
#include "kgc/observables.hpp"

namespace kgc {

enum class ExpansionMethod { dst_fast, direct_quadrature };

struct SpectralExpansion {
    std::vector<std::complex<double>> c;  // c_n, n = 1..n_max (index n-1)
    int n_max = 0;
    int grid_points = 0;        // number of uniform intervals on [0, L0]
    QuadScheme scheme = QuadScheme::trapezoid;
    ExpansionMethod method = ExpansionMethod::dst_fast;
    double completeness = 0.0;  // sum |c_n|^2

    std::complex<double> coeff(int n) const { return c.at(static_cast<std::size_t>(n) - 1); }
};

// Cached samples of the initial moving state on the uniform grid:
// A = i hbar dt Psi_{-,1}(0, x_j), B = Psi_{-,1}(0, x_j).
struct InitialStateTable {
    std::vector<double> x;
    std::vector<std::complex<double>> A;
    std::vector<std::complex<double>> B;
    int grid_points = 0;  // intervals; x has grid_points+1 entries
};

InitialStateTable tabulate_initial_state(const PhysicalConfig& cfg, int grid_points,
                                         const bessel::AsymptoticPolicy& policy,
                                         unsigned workers = 0);

// c_n = (Phi_{-,n}, Psi_{-,1})_KG for n = 1..n_max via two discrete sine
// transforms of the cached tables (trapezoid-equivalent; O(N log N)).
SpectralExpansion expand_initial_state(const PhysicalConfig& cfg, int n_max, int grid_points,
                                       const bessel::AsymptoticPolicy& policy,
                                       unsigned workers = 0);
SpectralExpansion expand_from_table(const PhysicalConfig& cfg, const InitialStateTable& table,
                                    int n_max);

// Slow per-n quadrature path kept for cross-validation of the fast path.
SpectralExpansion expand_initial_state_direct(const PhysicalConfig& cfg, int n_max,
                                              int grid_points,
                                              const bessel::AsymptoticPolicy& policy,
                                              QuadScheme scheme = QuadScheme::trapezoid);

// b_n = (Phi_{+,n}, Psi_{-,1})_KG for n = 1..n_max.
std::vector<std::complex<double>> antiparticle_overlaps(const PhysicalConfig& cfg, int n_max,
                                                        int grid_points,
                                                        const bessel::AsymptoticPolicy& policy,
                                                        unsigned workers = 0);
std::vector<std::complex<double>> overlaps_from_table(const PhysicalConfig& cfg,
                                                      const InitialStateTable& table, int n_max);

// Sum_n c_n Phi_{-,n}(t, x) with analytic derivatives.
ComplexSample evolve_static(const SpectralExpansion& expansion, const PhysicalConfig& cfg,
                            double t, double x);
std::vector<ComplexSample> evolve_static_grid(const SpectralExpansion& expansion,
                                              const PhysicalConfig& cfg, double t,
                                              std::span<const double> xs, unsigned workers = 0);

// Number of internal oscillations of Psi_{-,1}(0, .): beta L0 / (4 pi lambda_C).
double oscillation_estimate(const PhysicalConfig& cfg);

// Recommended n_max: ceil(safety * beta L0 / (pi lambda_C)).
int truncation_estimate(const PhysicalConfig& cfg, double safety = 4.0);

}  // namespace kgc
