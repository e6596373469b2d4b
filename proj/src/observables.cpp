#include "kgc/observables.hpp"

#include <cmath>

#include "kgc/errors.hpp"
#include "kgc/numerics.hpp"

namespace kgc {

void QuadratureSpec::validate() const {
    if (!(x_lo < x_hi)) throw DomainError("QuadratureSpec: x_lo must be < x_hi");
    if (num_points < 2) throw DomainError("QuadratureSpec: num_points must be >= 2");
    if (scheme == QuadScheme::composite_simpson && num_points % 2 == 0)
        throw DomainError("QuadratureSpec: composite_simpson needs an odd number of points");
}

double kg_density(const ComplexSample& s, const PhysicalConfig& cfg) {
    // i hbar (v* dt - conj(dt) v) = -2 hbar Im(v* dt)
    return -2.0 * cfg.hbar * std::imag(std::conj(s.value) * s.dt);
}

double kg_current(const ComplexSample& s, const PhysicalConfig& cfg) {
    return 2.0 * cfg.hbar * cfg.c * cfg.c * std::imag(std::conj(s.value) * s.dx);
}

double integrate(std::span<const double> values, double h, QuadScheme scheme) {
    const std::size_t n = values.size();
    if (n < 2) throw DomainError("integrate: need at least two points");
    std::vector<double> w(n);
    if (scheme == QuadScheme::composite_simpson) {
        if (n % 2 == 0) throw DomainError("integrate: Simpson needs an odd point count");
        for (std::size_t i = 0; i < n; ++i) {
            double wt = (i == 0 || i == n - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            w[i] = wt * values[i];
        }
        return pairwise_sum(w) * h / 3.0;
    }
    for (std::size_t i = 0; i < n; ++i)
        w[i] = ((i == 0 || i == n - 1) ? 0.5 : 1.0) * values[i];
    return pairwise_sum(w) * h;
}

std::complex<double> integrate(std::span<const std::complex<double>> values, double h,
                               QuadScheme scheme) {
    std::vector<double> re(values.size()), im(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        re[i] = values[i].real();
        im[i] = values[i].imag();
    }
    return {integrate(re, h, scheme), integrate(im, h, scheme)};
}

std::complex<double> kg_inner_product(std::span<const ComplexSample> bra,
                                      std::span<const ComplexSample> ket,
                                      const QuadratureSpec& quad, const PhysicalConfig& cfg) {
    quad.validate();
    if (bra.size() != ket.size() || bra.size() != static_cast<std::size_t>(quad.num_points))
        throw GridMismatch("kg_inner_product: operand grids differ in size");
    for (std::size_t i = 0; i < bra.size(); ++i)
        if (bra[i].x != ket[i].x || bra[i].t != ket[i].t)
            throw GridMismatch("kg_inner_product: operand grids differ in points");

    std::vector<std::complex<double>> g(bra.size());
    for (std::size_t i = 0; i < bra.size(); ++i) {
        g[i] = std::complex<double>(0.0, cfg.hbar) *
               (std::conj(bra[i].value) * ket[i].dt - std::conj(bra[i].dt) * ket[i].value);
    }
    const double h = (quad.x_hi - quad.x_lo) / static_cast<double>(quad.num_points - 1);
    return integrate(std::span<const std::complex<double>>(g), h, quad.scheme);
}

double continuity_residual(const std::function<ComplexSample(double, double)>& state,
                           const PhysicalConfig& cfg, double t, std::span<const double> grid,
                           double dt_step) {
    if (grid.size() < 3) throw DomainError("continuity_residual: need >= 3 grid points");
    const std::size_t n = grid.size();
    std::vector<double> rho_p(n), rho_m(n), j(n);
    for (std::size_t i = 0; i < n; ++i) {
        rho_p[i] = kg_density(state(t + dt_step, grid[i]), cfg);
        rho_m[i] = kg_density(state(t - dt_step, grid[i]), cfg);
        j[i] = kg_current(state(t, grid[i]), cfg);
    }
    double max_res = 0.0, max_djdx = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double drho_dt = (rho_p[i] - rho_m[i]) / (2.0 * dt_step);
        const double dj_dx = (j[i + 1] - j[i - 1]) / (grid[i + 1] - grid[i - 1]);
        max_res = std::max(max_res, std::abs(drho_dt + dj_dx));
        max_djdx = std::max(max_djdx, std::abs(dj_dx));
    }
    if (max_djdx == 0.0) return max_res;
    return max_res / max_djdx;
}

std::complex<double> weak_momentum(double rho, double j, double drho_dx,
                                   const PhysicalConfig& cfg) {
    if (rho == 0.0) throw DivisionByZero("weak_momentum: rho = 0 (point excluded from scans)");
    if (!(rho > 0.0)) throw DomainError("weak_momentum: rho must be positive");
    return {cfg.mass * j / rho, -cfg.hbar * drho_dx / (2.0 * rho)};
}

}  // namespace kgc
