#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "bessel_extended.hpp"
#include "kgc/cavity_states.hpp"
#include "kgc/errors.hpp"
#include "kgc/observables.hpp"

using namespace kgc;
using kgc::detail::MpReal;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

bessel::AsymptoticPolicy pol4() {
    bessel::AsymptoticPolicy p;
    p.max_terms = 4;
    return p;
}

// Small cavity that forces the series evaluation path: z ~ 500.
PhysicalConfig series_cfg() {
    PhysicalConfig c;
    c.beta = 0.02;
    c.L0 = 200.0 * c.lambda_c() * c.beta;
    return c;
}
}  // namespace

TEST_CASE("wall position") {
    PhysicalConfig cfg;
    CHECK(wall_position(cfg, 0.0) == cfg.L0);
    // ~0.3% growth at t = 1e-15 s
    const double growth = (wall_position(cfg, 1e-15) - cfg.L0) / cfg.L0;
    CHECK(growth == doctest::Approx(cfg.beta * cfg.c * 1e-15 / cfg.L0).epsilon(1e-12));
    CHECK(growth > 0.0025);
    CHECK(growth < 0.0035);
    CHECK_THROWS_AS(wall_position(cfg, -1.0), DomainError);
}

TEST_CASE("z argument") {
    PhysicalConfig cfg;
    // x = 0: L/(lambda_C beta), here ~ 2.9e8
    const double z00 = z_arg(cfg, 0.0, 0.0);
    CHECK(z00 == doctest::Approx(cfg.L0 / (cfg.lambda_c() * cfg.beta)).epsilon(1e-13));
    CHECK(z00 > 1e8);
    CHECK(z00 < 1e9);
    // extended-precision oracle from the same double inputs
    MpReal lam = MpReal(cfg.hbar, 256) / (MpReal(cfg.mass, 256) * cfg.c);
    MpReal oracle = MpReal(cfg.L0, 256) / (lam * cfg.beta);
    CHECK(std::abs(z00 - oracle.to_double()) <= 1e-15 * z00);
    CHECK_THROWS_AS(z_arg(cfg, 0.0, 2.0 * cfg.L0), DomainError);
    CHECK_THROWS_AS(z_arg(cfg, 0.0, -1e-9), DomainError);
}

TEST_CASE("phase phi endpoints and small-beta form") {
    PhysicalConfig cfg;
    const ModeData m3 = ModeData::make(cfg, 3, Branch::particle);
    CHECK(phase_phi(cfg, m3, 0.0, 0.0) == 0.0);
    const double at_wall = phase_phi(cfg, m3, 0.0, cfg.L0);
    CHECK(std::abs(at_wall - 3.0 * kPi) <= 1e-9);
    // beta << 1: phi ~ n pi x / L
    const double x = 0.37 * cfg.L0;
    CHECK(phase_phi(cfg, m3, 0.0, x) ==
          doctest::Approx(3.0 * kPi * x / cfg.L0).epsilon(2e-4));
}

TEST_CASE("static eigenstates") {
    PhysicalConfig cfg;
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    CHECK(phi_static(cfg, m1, 0.0, 0.0).value == cplx(0.0, 0.0));
    CHECK(phi_static(cfg, m1, 3e-16, cfg.L0).value == cplx(0.0, 0.0));

    // dt is the analytic -iE/hbar multiple
    const ComplexSample s = phi_static(cfg, m1, 1e-16, 0.4 * cfg.L0);
    CHECK(std::abs(s.dt - cplx(0.0, -m1.E_n / cfg.hbar) * s.value) <=
          1e-12 * std::abs(s.dt));

    // KG self-norm +1 / -1 via the trapezoid rule (exact for sine products)
    const int N = 4096;
    QuadratureSpec quad{N + 1, QuadScheme::trapezoid, 0.0, cfg.L0};
    for (Branch b : {Branch::particle, Branch::antiparticle}) {
        const ModeData m = ModeData::make(cfg, 5, b);
        std::vector<ComplexSample> ss(N + 1);
        for (int i = 0; i <= N; ++i)
            ss[i] = phi_static(cfg, m, 0.0, (i == N) ? cfg.L0 : cfg.L0 * i / N);
        const cplx norm = kg_inner_product(ss, ss, quad, cfg);
        const double want = (b == Branch::particle) ? 1.0 : -1.0;
        CHECK(std::abs(norm - want) < 1e-12);
    }

    // n = 10000 scales: p/(mc) and mode velocity both ~ 1.1e-2
    const ModeData mk = ModeData::make(cfg, 10000, Branch::particle);
    CHECK(mk.p_n / (cfg.mass * cfg.c) == doctest::Approx(1.1e-2).epsilon(0.01));
    CHECK(mode_velocity(cfg, mk) / cfg.c == doctest::Approx(1.1e-2).epsilon(0.01));
}

TEST_CASE("mode velocity is monotone and subluminal") {
    PhysicalConfig cfg;
    double prev = 0.0;
    for (int n : {1, 10, 100, 1000, 10000, 100000}) {
        const double u = mode_velocity(cfg, ModeData::make(cfg, n, Branch::particle));
        CHECK(u > prev);
        CHECK(u < cfg.c);
        prev = u;
    }
    CHECK(mode_velocity(cfg, ModeData::make(cfg, 1, Branch::particle)) / cfg.c < 1e-5);
}

TEST_CASE("moving state vanishes exactly at both walls") {
    PhysicalConfig cfg;
    const auto pol = pol4();
    for (int n : {1, 2, 5}) {
        const ModeData m = ModeData::make(cfg, n, Branch::particle);
        const double t = 2e-15;
        const double L = wall_position(cfg, t);
        CHECK(psi_moving(cfg, m, t, 0.0, pol).value == cplx(0.0, 0.0));
        CHECK(psi_moving(cfg, m, t, L, pol).value == cplx(0.0, 0.0));
    }
}

TEST_CASE("normalization constant matches the closed form") {
    // The KG self-norm of C = 1 states integrates exactly to
    // tanh(pi k_n/2) n pi/(k_n beta), so C = sqrt(k_n beta/(n pi tanh)).
    PhysicalConfig cfg;
    const auto pol = pol4();
    for (int n : {1, 2}) {
        const ModeData m = ModeData::make(cfg, n, Branch::particle);
        const double C = normalization_constant(cfg, m, pol);
        const double closed =
            std::sqrt(m.k_n * cfg.beta / (n * kPi * std::tanh(0.5 * kPi * m.k_n)));
        CHECK(C == doctest::Approx(closed).epsilon(1e-9));
        CHECK(C == doctest::Approx(1.0).epsilon(1e-3));  // ~1 in this regime
    }
    const ModeData ma = ModeData::make(cfg, 1, Branch::antiparticle);
    CHECK(normalization_constant(cfg, ma, pol) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("moving state solves the field equation (second-order residual)") {
    PhysicalConfig cfg;
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    const MovingStateEvaluator psi(cfg, m1, pol4());
    const double kappa2 = std::pow(cfg.mass * cfg.c / cfg.hbar, 2.0);
    auto residual = [&](double ht, double hx, double t, double x) {
        const cplx ptt =
            (psi(t + ht, x).value - 2.0 * psi(t, x).value + psi(t - ht, x).value) / (ht * ht);
        const cplx pxx =
            (psi(t, x + hx).value - 2.0 * psi(t, x).value + psi(t, x - hx).value) / (hx * hx);
        const cplx r = ptt / (cfg.c * cfg.c) - pxx + kappa2 * psi(t, x).value;
        return std::abs(r) / (kappa2 * std::abs(psi(t, x).value));
    };
    const double r1 = residual(1e-22, 7e-12, 1e-15, 0.43 * cfg.L0);
    const double r2 = residual(5e-23, 3.5e-12, 1e-15, 0.43 * cfg.L0);
    const double r4 = residual(2.5e-23, 1.75e-12, 1e-15, 0.43 * cfg.L0);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
    CHECK(r2 / r4 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("analytic derivatives match central differences at second order") {
    PhysicalConfig cfg;
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    const MovingStateEvaluator psi(cfg, m1, pol4());
    const double t = 1e-15, x = 0.43 * cfg.L0;
    const ComplexSample s0 = psi(t, x);
    auto err_t = [&](double h) {
        const cplx fd = (psi(t + h, x).value - psi(t - h, x).value) / (2.0 * h);
        return std::abs(fd - s0.dt) / std::abs(s0.dt);
    };
    auto err_x = [&](double h) {
        const cplx fd = (psi(t, x + h).value - psi(t, x - h).value) / (2.0 * h);
        return std::abs(fd - s0.dx) / std::abs(s0.dx);
    };
    CHECK(err_t(1e-23) / err_t(5e-24) == doctest::Approx(4.0).epsilon(0.3));
    CHECK(err_x(1e-12) / err_x(5e-13) == doctest::Approx(4.0).epsilon(0.3));
    CHECK(err_t(5e-24) < 1e-5);
    CHECK(err_x(5e-13) < 1e-5);
}

TEST_CASE("series evaluation path supports small cavities") {
    const PhysicalConfig cfg = series_cfg();
    bessel::AsymptoticPolicy pol;
    pol.max_terms = 4;
    pol.precision_bits = 1024;
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    const MovingStateEvaluator psi(cfg, m1, pol);
    // Dirichlet zeros hold on this path too
    CHECK(psi(0.0, 0.0).value == cplx(0.0, 0.0));
    CHECK(psi(0.0, cfg.L0).value == cplx(0.0, 0.0));
    // interior value is finite, nonzero, with the sine envelope
    const ComplexSample mid = psi(0.0, 0.5 * cfg.L0);
    CHECK(std::abs(mid.value) > 0.0);

    // z varies by << 1 radian across the cavity; Re Psi has no interior zero
    // crossings beyond those of sin(phi_1) (none for n = 1).
    int crossings = 0;
    double prev = 0.0;
    bool have = false;
    for (int i = 1; i < 192; ++i) {
        const double re = psi(0.0, cfg.L0 * i / 192.0).value.real();
        if (re != 0.0) {
            if (have && re * prev < 0.0) ++crossings;
            prev = re;
            have = true;
        }
    }
    CHECK(crossings == 0);
}

TEST_CASE("schrodinger solution: box limit, current form, norm") {
    PhysicalConfig cfg;
    cfg.beta = 1e-14;  // effectively static
    const int n = 2;
    const double x = 0.3 * cfg.L0;
    const ComplexSample s = schrodinger_moving(cfg, n, 0.0, x);
    const double box = std::sqrt(2.0 / cfg.L0) * std::sin(n * kPi * x / cfg.L0);
    CHECK(std::abs(s.value - box) <= 1e-8 * std::abs(box));

    // moving wall: j = (hbar/m) Im(psi* dx psi) = (2/L) sin^2(n pi x/L) v x / L
    PhysicalConfig mv;
    const double t = 1e-15;
    const double L = wall_position(mv, t);
    const double v = mv.wall_speed();
    for (double frac : {0.25, 0.5, 0.8}) {
        const double xx = frac * L;
        const ComplexSample sm = schrodinger_moving(mv, n, t, xx);
        const double j = (mv.hbar / mv.mass) * std::imag(std::conj(sm.value) * sm.dx);
        const double sn = std::sin(n * kPi * xx / L);
        const double form = (2.0 / L) * sn * sn * v * xx / L;
        CHECK(j == doctest::Approx(form).epsilon(1e-12));
    }

    // unit L2 norm over [0, L]
    const int M = 4097;
    std::vector<double> a(M);
    for (int i = 0; i < M; ++i) {
        const double xx = (i == M - 1) ? L : L * i / (M - 1);
        a[i] = std::norm(schrodinger_moving(mv, n, t, xx).value);
    }
    CHECK(integrate(a, L / (M - 1), QuadScheme::composite_simpson) ==
          doctest::Approx(1.0).epsilon(1e-10));

    // analytic dt matches finite differences
    const ComplexSample s1 = schrodinger_moving(mv, n, t, 0.37 * L);
    const double h = 1e-20;
    const cplx fd = (schrodinger_moving(mv, n, t + h, 0.37 * L).value -
                     schrodinger_moving(mv, n, t - h, 0.37 * L).value) /
                    (2.0 * h);
    CHECK(std::abs(s1.dt - fd) <= 1e-7 * std::abs(s1.dt));
}

TEST_CASE("non-relativistic reduction: overlap with the Schrodinger solution") {
    PhysicalConfig cfg;
    cfg.beta = 1e-3;
    cfg.L0 = 1e6 * cfg.lambda_c();
    const auto pol = pol4();
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    const MovingStateEvaluator psi(cfg, m1, pol);
    const double t = 0.1 * cfg.L0 / cfg.c;
    const double L = wall_position(cfg, t);
    const int M = 2049;
    const double h = L / (M - 1);
    std::vector<double> pr(M), pi_(M), na(M), nb(M);
    for (int i = 0; i < M; ++i) {
        const double x = (i == M - 1) ? L : i * h;
        const ComplexSample a = psi(t, x);
        const ComplexSample b = schrodinger_moving(cfg, 1, t, x);
        const cplx prod = std::conj(b.value) * a.value;
        pr[i] = prod.real();
        pi_[i] = prod.imag();
        na[i] = std::norm(a.value);
        nb[i] = std::norm(b.value);
    }
    const double overlap = std::hypot(integrate(pr, h, QuadScheme::composite_simpson),
                                      integrate(pi_, h, QuadScheme::composite_simpson)) /
                           std::sqrt(integrate(na, h, QuadScheme::composite_simpson) *
                                     integrate(nb, h, QuadScheme::composite_simpson));
    CHECK(overlap > 1.0 - 1e-4);
}

TEST_CASE("non-relativistic phase agreement") {
    PhysicalConfig cfg;
    const ModeData m1 = ModeData::make(cfg, 1, Branch::particle);
    const auto pol = pol4();
    CHECK(nonrel_phase_check(cfg, m1, 0.0, 0.0, pol) == 0.0);

    const double diff = nonrel_phase_check(cfg, m1, 1e-15, 0.5 * cfg.L0, pol);
    CHECK(diff < 0.05);  // << 1 radian

    // oracle: both phases recomputed in extended precision
    {
        const long prec = 256;
        MpReal lam = MpReal(cfg.hbar, prec) / (MpReal(cfg.mass, prec) * cfg.c);
        auto zmp = [&](double t, double x) {
            MpReal L = MpReal(cfg.L0, prec) + MpReal(cfg.beta, prec) * cfg.c * t;
            MpReal bx = MpReal(cfg.beta, prec) * x;
            return sqrt(L * L - bx * bx) / (lam * cfg.beta);
        };
        const double k2 = 4.0 * m1.k_n * m1.k_n + 1.0;
        MpReal lhs = (zmp(1e-15, 0.5 * cfg.L0) - MpReal(k2, prec) / (zmp(1e-15, 0.5 * cfg.L0) * 8.0)) -
                     (zmp(0.0, 0.0) - MpReal(k2, prec) / (zmp(0.0, 0.0) * 8.0));
        const double L = wall_position(cfg, 1e-15);
        const double x = 0.5 * cfg.L0;
        MpReal target = MpReal(cfg.mass, prec) * cfg.c * cfg.c * 1e-15 / cfg.hbar -
                        MpReal(cfg.mass, prec) * cfg.wall_speed() * x * x / (2.0 * cfg.hbar * L) +
                        MpReal(cfg.hbar, prec) * kPi * kPi * 1e-15 /
                            (2.0 * cfg.mass * cfg.L0 * L);
        const double oracle = abs(lhs - target).to_double();
        CHECK(diff == doctest::Approx(oracle).epsilon(1e-6));
    }

    // regime flags enforced
    PhysicalConfig bad;
    bad.beta = 0.5;
    CHECK_THROWS_AS(nonrel_phase_check(bad, ModeData::make(bad, 1, Branch::particle), 0.0, 0.0,
                                       pol),
                    RegimeError);
}

TEST_CASE("leading beta dependence of the phase correction") {
    // -1/(beta^2 z) at x = 0 equals -lambda_C/(beta L0) + c lambda_C t/L0^2 + O(beta)
    PhysicalConfig cfg;
    const double t = 1e-15;
    const double lam = cfg.lambda_c();
    auto f = [&](double beta) {
        PhysicalConfig c2 = cfg;
        c2.beta = beta;
        const double z = z_arg(c2, t, 0.0);
        return -1.0 / (beta * beta * z) + lam / (cfg.L0 * beta);
    };
    const double target = cfg.c * lam * t / (cfg.L0 * cfg.L0);
    const double f1 = f(1e-3), f2 = f(5e-4);
    // Richardson in beta removes the linear remainder
    const double extrap = 2.0 * f2 - f1;
    CHECK(extrap == doctest::Approx(target).epsilon(1e-6));
}
