#pragma once

// KG scalar product, probability density, current density, continuity
// diagnostics and the weak value of momentum.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "kgc/cavity_states.hpp"

namespace kgc {

enum class QuadScheme { composite_simpson, trapezoid };

struct QuadratureSpec {
    int num_points = 4097;  // odd for composite_simpson
    QuadScheme scheme = QuadScheme::composite_simpson;
    double x_lo = 0.0;
    double x_hi = 1.0;

    void validate() const;
};

struct CurrentProfile {
    enum class Label { static_cavity, expanding, difference };
    std::vector<double> grid;  // strictly increasing positions, m
    std::vector<double> j;     // probability current
    double t = 0.0;
    Label label = Label::expanding;
};

// rho_KG = i hbar (phi* dt phi - (dt phi*) phi); real by construction.
double kg_density(const ComplexSample& sample, const PhysicalConfig& cfg);

// j_KG = -hbar c^2 i (phi* dx phi - (dx phi*) phi)
double kg_current(const ComplexSample& sample, const PhysicalConfig& cfg);

// (Phi, Xi)_KG = int dx (Phi* i hbar dt Xi - i hbar (dt Phi*) Xi) over the
// common grid. Both sample lists must be on identical (t, x) points spanning
// quad's domain uniformly.
std::complex<double> kg_inner_product(std::span<const ComplexSample> bra,
                                      std::span<const ComplexSample> ket,
                                      const QuadratureSpec& quad, const PhysicalConfig& cfg);

// Integrate tabulated values on a uniform grid per the scheme (pairwise
// deterministic summation).
double integrate(std::span<const double> values, double h, QuadScheme scheme);
std::complex<double> integrate(std::span<const std::complex<double>> values, double h,
                               QuadScheme scheme);

// max_i |d rho/dt + d j/dx| / max_i |d j/dx| by central differences with step
// dt_step in time and the grid spacing in x (interior points only).
double continuity_residual(const std::function<ComplexSample(double, double)>& state,
                           const PhysicalConfig& cfg, double t, std::span<const double> grid,
                           double dt_step);

// P^w = m j / rho - i hbar (d rho/dx) / (2 rho)
std::complex<double> weak_momentum(double rho, double j, double drho_dx,
                                   const PhysicalConfig& cfg);

}  // namespace kgc
