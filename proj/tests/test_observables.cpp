#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "kgc/cavity_states.hpp"
#include "kgc/errors.hpp"
#include "kgc/observables.hpp"

using namespace kgc;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bessel::AsymptoticPolicy pol4() {
    bessel::AsymptoticPolicy p;
    p.max_terms = 4;
    return p;
}

std::vector<ComplexSample> static_samples(const PhysicalConfig& cfg, const ModeData& m, double t,
                                          int N) {
    std::vector<ComplexSample> s(N + 1);
    for (int i = 0; i <= N; ++i)
        s[i] = phi_static(cfg, m, t, (i == N) ? cfg.L0 : cfg.L0 * i / N);
    return s;
}
}  // namespace

TEST_CASE("density of static modes: sign and closed form") {
    PhysicalConfig cfg;
    const ModeData mp = ModeData::make(cfg, 3, Branch::particle);
    const ModeData ma = ModeData::make(cfg, 3, Branch::antiparticle);
    for (double frac : {0.1, 0.35, 0.77}) {
        const double x = frac * cfg.L0;
        const ComplexSample sp = phi_static(cfg, mp, 2e-16, x);
        const ComplexSample sa = phi_static(cfg, ma, 2e-16, x);
        const double rp = kg_density(sp, cfg);
        const double ra = kg_density(sa, cfg);
        CHECK(rp == doctest::Approx(2.0 * mp.E_n * std::norm(sp.value)).epsilon(1e-13));
        CHECK(rp >= 0.0);
        CHECK(ra == doctest::Approx(-rp).epsilon(1e-13));
    }
}

TEST_CASE("density and current of a moving mode match the closed forms") {
    // rho = C^2 2 L tanh(pi k/2) sin^2(phi) / (L^2 - beta^2 x^2)
    // j   = C^2 2 beta c x tanh(pi k/2) sin^2(phi) / (L^2 - beta^2 x^2)
    PhysicalConfig cfg;
    const auto pol = pol4();
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    const MovingStateEvaluator psi(cfg, m1, pol);
    const double C = psi.norm_constant();
    const double t = 1.3e-15;
    const double L = wall_position(cfg, t);
    const double th = std::tanh(0.5 * kPi * m1.k_n);
    for (double frac : {0.2, 0.5, 0.9}) {
        const double x = frac * L;
        const ComplexSample s = psi(t, x);
        const double sn = std::sin(phase_phi(cfg, m1, t, x));
        const double denom = L * L - cfg.beta * cfg.beta * x * x;
        const double rho_closed = C * C * 2.0 * L * th * sn * sn / denom;
        const double j_closed = C * C * 2.0 * cfg.beta * cfg.c * x * th * sn * sn / denom;
        CHECK(kg_density(s, cfg) == doctest::Approx(rho_closed).epsilon(1e-8));
        CHECK(kg_current(s, cfg) == doctest::Approx(j_closed).epsilon(1e-8));
    }
    // at x = 0 both vanish with the sine factor
    CHECK(kg_current(psi(t, 0.0), cfg) == 0.0);
}

TEST_CASE("current of a real-valued sample vanishes") {
    PhysicalConfig cfg;
    const ModeData m2 = ModeData::make(cfg, 2, Branch::particle);
    const ComplexSample s = phi_static(cfg, m2, 0.0, 0.3 * cfg.L0);  // real at t = 0
    CHECK(kg_current(s, cfg) == 0.0);
}

TEST_CASE("density and current are real by construction") {
    // The defining sesquilinear combinations have vanishing real parts of
    // i(conj(a) b - conj(b) a); check the residue directly.
    PhysicalConfig cfg;
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    const MovingStateEvaluator psi(cfg, m1, pol4());
    const ComplexSample s = psi(1e-15, 0.41 * cfg.L0);
    const cplx dens = cplx(0, 1) * cfg.hbar *
                      (std::conj(s.value) * s.dt - std::conj(s.dt) * s.value);
    CHECK(std::abs(dens.imag()) <= 1e-14 * std::abs(dens.real()));
    const cplx curr = cplx(0, -1) * cfg.hbar * cfg.c * cfg.c *
                      (std::conj(s.value) * s.dx - std::conj(s.dx) * s.value);
    CHECK(std::abs(curr.imag()) <= 1e-14 * std::abs(curr.real()));
    CHECK(dens.real() == doctest::Approx(kg_density(s, cfg)).epsilon(1e-13));
    CHECK(curr.real() == doctest::Approx(kg_current(s, cfg)).epsilon(1e-13));
}

TEST_CASE("inner product: orthonormality, hermiticity, sesquilinearity") {
    PhysicalConfig cfg;
    const int N = 4096;
    QuadratureSpec quad{N + 1, QuadScheme::trapezoid, 0.0, cfg.L0};
    const ModeData m2 = ModeData::make(cfg, 2, Branch::particle);
    const ModeData m5 = ModeData::make(cfg, 5, Branch::particle);
    const double t = 1e-16;
    const auto s2 = static_samples(cfg, m2, t, N);
    const auto s5 = static_samples(cfg, m5, t, N);

    CHECK(std::abs(kg_inner_product(s2, s5, quad, cfg)) < 1e-12);          // n != m
    CHECK(std::abs(kg_inner_product(s2, s2, quad, cfg) - 1.0) < 1e-12);    // self-norm

    // hermiticity
    const cplx ab = kg_inner_product(s2, s5, quad, cfg);
    const cplx ba = kg_inner_product(s5, s2, quad, cfg);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-14);

    // sesquilinearity: (a Phi, Xi) = conj(a) (Phi, Xi)
    const cplx a(0.6, -1.7);
    auto scaled = s2;
    for (auto& s : scaled) {
        s.value *= a;
        s.dt *= a;
        s.dx *= a;
    }
    const cplx left = kg_inner_product(scaled, s5, quad, cfg);
    CHECK(std::abs(left - std::conj(a) * ab) <= 1e-12 * std::abs(a));
    const cplx right = kg_inner_product(s5, scaled, quad, cfg);
    CHECK(std::abs(right - a * ba) <= 1e-12 * std::abs(a));
}

TEST_CASE("inner product grid checks") {
    PhysicalConfig cfg;
    const int N = 64;
    QuadratureSpec quad{N + 1, QuadScheme::trapezoid, 0.0, cfg.L0};
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    auto a = static_samples(cfg, m1, 0.0, N);
    auto b = static_samples(cfg, m1, 0.0, N);
    b[3].x *= 1.0000001;
    CHECK_THROWS_AS(kg_inner_product(a, b, quad, cfg), GridMismatch);
    auto c = static_samples(cfg, m1, 0.0, N / 2);
    CHECK_THROWS_AS(kg_inner_product(a, c, quad, cfg), GridMismatch);
    QuadratureSpec bad{N, QuadScheme::composite_simpson, 0.0, cfg.L0};  // even points
    CHECK_THROWS_AS(kg_inner_product(a, a, bad, cfg), DomainError);
}

TEST_CASE("quadrature convergence matches the scheme order") {
    // Richardson on exp(x) over [0, 1]
    auto run = [](int n, QuadScheme scheme) {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i) v[i] = std::exp(static_cast<double>(i) / (n - 1));
        return std::abs(integrate(v, 1.0 / (n - 1), scheme) - (std::exp(1.0) - 1.0));
    };
    const double s1 = run(129, QuadScheme::composite_simpson);
    const double s2 = run(257, QuadScheme::composite_simpson);
    CHECK(s1 / s2 == doctest::Approx(16.0).epsilon(0.25));
    const double t1 = run(129, QuadScheme::trapezoid);
    const double t2 = run(257, QuadScheme::trapezoid);
    CHECK(t1 / t2 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("continuity: stationary state has static density and zero current") {
    PhysicalConfig cfg;
    const ModeData m3 = ModeData::make(cfg, 3, Branch::particle);
    const double t = 1e-15, h = 1e-17;
    for (double frac : {0.2, 0.6}) {
        const double x = frac * cfg.L0;
        const double r0 = kg_density(phi_static(cfg, m3, t, x), cfg);
        const double r1 = kg_density(phi_static(cfg, m3, t + h, x), cfg);
        CHECK(std::abs(r1 - r0) <= 1e-12 * std::abs(r0));  // d rho/dt = 0
        CHECK(std::abs(kg_current(phi_static(cfg, m3, t, x), cfg)) <=
              1e-12 * r0 * cfg.c);  // j = 0 separately
    }
}

TEST_CASE("continuity residual of the exact moving mode converges at 2nd order") {
    PhysicalConfig cfg;
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    const MovingStateEvaluator psi(cfg, m1, pol4());
    auto state = [&](double t, double x) { return psi(t, x); };
    // refine the time step and the spatial grid together
    auto residual = [&](int level) {
        const int n = 32 * (1 << level) + 1;
        std::vector<double> grid(n);
        for (int i = 0; i < n; ++i) grid[i] = cfg.L0 * (0.3 + 0.4 * i / (n - 1.0));
        return continuity_residual(state, cfg, 1e-15, grid, 3e-16 / (1 << level));
    };
    const double r1 = residual(0);
    const double r2 = residual(1);
    const double r4 = residual(2);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.3));
    CHECK(r2 / r4 == doctest::Approx(4.0).epsilon(0.4));
}

TEST_CASE("weak momentum") {
    PhysicalConfig cfg;
    CHECK(weak_momentum(1.0, 0.0, 0.0, cfg) == cplx(0.0, 0.0));
    CHECK_THROWS_AS(weak_momentum(0.0, 1.0, 0.0, cfg), DivisionByZero);
    CHECK_THROWS_AS(weak_momentum(-1.0, 1.0, 0.0, cfg), DomainError);

    // non-relativistic mode: Re P^w from the closed current and density forms
    // is m j / rho = m (2 x beta c sin^2/L^2) / ((2/L) sin^2) = m v x / L
    const double t = 1e-15;
    const double L = wall_position(cfg, t);
    const double v = cfg.wall_speed();
    for (double frac : {0.3, 0.62}) {
        const double x = frac * L;
        const double sn = std::sin(kPi * x / L);
        const double j = 2.0 * x * cfg.beta * cfg.c * sn * sn / (L * L);
        const double rho = (2.0 / L) * sn * sn;
        const cplx pw = weak_momentum(rho, j, 0.0, cfg);
        CHECK(pw.real() == doctest::Approx(cfg.mass * v * x / L).epsilon(1e-12));
    }
}
