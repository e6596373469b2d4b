#include "kgc/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "kgc/errors.hpp"

namespace kgc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cplx = std::complex<double>;

std::mutex fftw_plan_mutex;

// DST-I of the n-1 interior samples: S_m = sum_{j=1}^{N-1} f_j sin(pi j m / N).
// FFTW's RODFT00 returns twice that sum.
void dst_interior(std::vector<double>& data) {
    const int n = static_cast<int>(data.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan = fftw_plan_r2r_1d(n, data.data(), data.data(), FFTW_RODFT00, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    for (double& v : data) v *= 0.5;
}

void check_resolution(const PhysicalConfig& cfg, int n_max, int grid_points) {
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    if (grid_points < 8) throw ResolutionError("grid_points too small");
    if (n_max > grid_points - 1)
        throw ResolutionError("n_max exceeds the sine modes representable on the grid");
    // Fastest content: Bessel chirp |dz/dx| + phi' at x = L0, and the n_max sine.
    const double lamc = cfg.lambda_c();
    const double chirp = cfg.beta / (lamc * std::sqrt(1.0 - cfg.beta * cfg.beta));
    const double k1 = 2.0 * kPi / (std::log1p(cfg.beta) - std::log1p(-cfg.beta));
    const double phi1 = k1 * cfg.beta / (cfg.L0 * (1.0 - cfg.beta * cfg.beta));
    const double kappa = std::max(chirp + phi1, n_max * kPi / cfg.L0);
    const double pts_per_wavelength = 2.0 * kPi * grid_points / (cfg.L0 * kappa);
    if (pts_per_wavelength < 8.0)
        throw ResolutionError("grid under-resolves the oscillations: " +
                              std::to_string(pts_per_wavelength) + " points per wavelength < 8");
}

struct SineMoments {
    // S[m-1] = integral f(x) sin(m pi x / L0) dx for m = 1..n_max
    std::vector<cplx> A;  // moments of i hbar dt Psi
    std::vector<cplx> B;  // moments of Psi
};

SineMoments sine_moments(const PhysicalConfig& cfg, const InitialStateTable& table, int n_max) {
    const int N = table.grid_points;
    const double h = cfg.L0 / static_cast<double>(N);
    std::vector<double> re(N - 1), im(N - 1), re2(N - 1), im2(N - 1);
    for (int j = 1; j < N; ++j) {
        re[j - 1] = table.A[j].real();
        im[j - 1] = table.A[j].imag();
        re2[j - 1] = table.B[j].real();
        im2[j - 1] = table.B[j].imag();
    }
    dst_interior(re);
    dst_interior(im);
    dst_interior(re2);
    dst_interior(im2);
    SineMoments out;
    out.A.resize(n_max);
    out.B.resize(n_max);
    for (int m = 1; m <= n_max; ++m) {
        out.A[m - 1] = cplx(re[m - 1], im[m - 1]) * h;
        out.B[m - 1] = cplx(re2[m - 1], im2[m - 1]) * h;
    }
    return out;
}

}  // namespace

InitialStateTable tabulate_initial_state(const PhysicalConfig& cfg, int grid_points,
                                         const bessel::AsymptoticPolicy& policy,
                                         unsigned workers) {
    cfg.validate();
    const int N = grid_points;
    if (N < 8) throw ResolutionError("grid_points too small");
    InitialStateTable table;
    table.grid_points = N;
    table.x.resize(N + 1);
    table.A.resize(N + 1);
    table.B.resize(N + 1);
    const double h = cfg.L0 / static_cast<double>(N);
    const ModeData mode = ModeData::make(cfg, 1, Branch::particle);
    const MovingStateEvaluator psi(cfg, mode, policy);
    const cplx ih(0.0, cfg.hbar);
    parallel_for(
        static_cast<std::size_t>(N) + 1,
        [&](std::size_t j) {
            const double x = (j == static_cast<std::size_t>(N)) ? cfg.L0 : j * h;
            table.x[j] = x;
            const ComplexSample s = psi(0.0, x);
            table.A[j] = ih * s.dt;
            table.B[j] = s.value;
        },
        workers);
    return table;
}

SpectralExpansion expand_from_table(const PhysicalConfig& cfg, const InitialStateTable& table,
                                    int n_max) {
    check_resolution(cfg, n_max, table.grid_points);
    const SineMoments mom = sine_moments(cfg, table, n_max);
    SpectralExpansion e;
    e.n_max = n_max;
    e.grid_points = table.grid_points;
    e.scheme = QuadScheme::trapezoid;
    e.method = ExpansionMethod::dst_fast;
    e.c.resize(n_max);
    std::vector<double> c2(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const ModeData m = ModeData::make(cfg, n, Branch::particle);
        const double Nn = 1.0 / std::sqrt(m.E_n * cfg.L0);
        e.c[n - 1] = Nn * (mom.A[n - 1] + m.E_n * mom.B[n - 1]);
        c2[n - 1] = std::norm(e.c[n - 1]);
    }
    e.completeness = pairwise_sum(c2);
    return e;
}

SpectralExpansion expand_initial_state(const PhysicalConfig& cfg, int n_max, int grid_points,
                                       const bessel::AsymptoticPolicy& policy, unsigned workers) {
    check_resolution(cfg, n_max, grid_points);
    const InitialStateTable table = tabulate_initial_state(cfg, grid_points, policy, workers);
    return expand_from_table(cfg, table, n_max);
}

SpectralExpansion expand_initial_state_direct(const PhysicalConfig& cfg, int n_max,
                                              int grid_points,
                                              const bessel::AsymptoticPolicy& policy,
                                              QuadScheme scheme) {
    check_resolution(cfg, n_max, grid_points);
    if (scheme == QuadScheme::composite_simpson && grid_points % 2 != 0)
        throw DomainError("direct Simpson path needs an even interval count");
    const InitialStateTable table = tabulate_initial_state(cfg, grid_points, policy);
    const int N = table.grid_points;
    const double h = cfg.L0 / static_cast<double>(N);

    SpectralExpansion e;
    e.n_max = n_max;
    e.grid_points = N;
    e.scheme = scheme;
    e.method = ExpansionMethod::direct_quadrature;
    e.c.resize(n_max);
    std::vector<double> c2(n_max);
    std::vector<cplx> g(N + 1);
    for (int n = 1; n <= n_max; ++n) {
        const ModeData m = ModeData::make(cfg, n, Branch::particle);
        const double Nn = 1.0 / std::sqrt(m.E_n * cfg.L0);
        for (int j = 0; j <= N; ++j) {
            const double s = sinpi(static_cast<double>(n) * (table.x[j] / cfg.L0));
            g[j] = s * (table.A[j] + m.E_n * table.B[j]);
        }
        e.c[n - 1] = Nn * integrate(std::span<const cplx>(g), h, scheme);
        c2[n - 1] = std::norm(e.c[n - 1]);
    }
    e.completeness = pairwise_sum(c2);
    return e;
}

std::vector<cplx> overlaps_from_table(const PhysicalConfig& cfg, const InitialStateTable& table,
                                      int n_max) {
    check_resolution(cfg, n_max, table.grid_points);
    const SineMoments mom = sine_moments(cfg, table, n_max);
    std::vector<cplx> b(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const ModeData m = ModeData::make(cfg, n, Branch::antiparticle);
        const double Nn = 1.0 / std::sqrt(m.E_n * cfg.L0);
        b[n - 1] = Nn * (mom.A[n - 1] - m.E_n * mom.B[n - 1]);
    }
    return b;
}

std::vector<cplx> antiparticle_overlaps(const PhysicalConfig& cfg, int n_max, int grid_points,
                                        const bessel::AsymptoticPolicy& policy, unsigned workers) {
    check_resolution(cfg, n_max, grid_points);
    const InitialStateTable table = tabulate_initial_state(cfg, grid_points, policy, workers);
    return overlaps_from_table(cfg, table, n_max);
}

ComplexSample evolve_static(const SpectralExpansion& expansion, const PhysicalConfig& cfg,
                            double t, double x) {
    if (t < 0.0) throw DomainError("evolve_static: t must be >= 0");
    if (!(x >= 0.0) || x > cfg.L0) throw DomainError("evolve_static: x outside [0, L0]");
    const double u = x / cfg.L0;
    ComplexSample out;
    out.t = t;
    out.x = x;
    std::vector<cplx> vs(expansion.n_max), vt(expansion.n_max), vx(expansion.n_max);
    for (int n = 1; n <= expansion.n_max; ++n) {
        const ModeData m = ModeData::make(cfg, n, Branch::particle);
        const double Nn = 1.0 / std::sqrt(m.E_n * cfg.L0);
        const double theta = -m.E_n * t / cfg.hbar;
        const cplx w = expansion.c[n - 1] * Nn * cplx(std::cos(theta), std::sin(theta));
        const double sn = sinpi(n * u);
        const double cn = cospi(n * u);
        vs[n - 1] = w * sn;
        vt[n - 1] = cplx(0.0, -m.E_n / cfg.hbar) * w * sn;
        vx[n - 1] = w * cn * (n * kPi / cfg.L0);
    }
    out.value = pairwise_sum(vs);
    out.dt = pairwise_sum(vt);
    out.dx = pairwise_sum(vx);
    return out;
}

std::vector<ComplexSample> evolve_static_grid(const SpectralExpansion& expansion,
                                              const PhysicalConfig& cfg, double t,
                                              std::span<const double> xs, unsigned workers) {
    std::vector<ComplexSample> out(xs.size());
    // Per-mode weights shared across points.
    const int n_max = expansion.n_max;
    std::vector<cplx> w(n_max);
    std::vector<double> E(n_max);
    for (int n = 1; n <= n_max; ++n) {
        const ModeData m = ModeData::make(cfg, n, Branch::particle);
        const double Nn = 1.0 / std::sqrt(m.E_n * cfg.L0);
        const double theta = -m.E_n * t / cfg.hbar;
        w[n - 1] = expansion.c[n - 1] * Nn * cplx(std::cos(theta), std::sin(theta));
        E[n - 1] = m.E_n;
    }
    for (double x : xs)
        if (!(x >= 0.0) || x > cfg.L0) throw DomainError("evolve_static_grid: x outside [0, L0]");
    parallel_for(
        xs.size(),
        [&](std::size_t i) {
            const double x = xs[i];
            const double u = x / cfg.L0;
            std::vector<cplx> vs(n_max), vt(n_max), vx(n_max);
            for (int n = 1; n <= n_max; ++n) {
                const double sn = sinpi(n * u);
                const double cn = cospi(n * u);
                vs[n - 1] = w[n - 1] * sn;
                vt[n - 1] = cplx(0.0, -E[n - 1] / cfg.hbar) * w[n - 1] * sn;
                vx[n - 1] = w[n - 1] * cn * (n * kPi / cfg.L0);
            }
            out[i] = {pairwise_sum(vs), pairwise_sum(vt), pairwise_sum(vx), t, x};
        },
        workers);
    return out;
}

double oscillation_estimate(const PhysicalConfig& cfg) {
    return cfg.beta * cfg.L0 / (4.0 * kPi * cfg.lambda_c());
}

int truncation_estimate(const PhysicalConfig& cfg, double safety) {
    return static_cast<int>(std::ceil(safety * cfg.beta * cfg.L0 / (kPi * cfg.lambda_c())));
}

}  // namespace kgc
