#include "kgc/cavity_states.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "bessel_extended.hpp"
#include "kgc/errors.hpp"

namespace kgc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
using cplx = std::complex<double>;

struct PhiParts {
    double phi;      // phi_n(t, x)
    double sin_phi;  // exactly 0 at both walls
    double cos_phi;
};

// phi_n = k_n atanh(beta x / L). Evaluated from whichever wall is closer so
// the sine vanishes identically at x = 0 and x = L.
PhiParts phi_parts(double k_n, int n, double beta, double L, double x) {
    if (x <= 0.5 * L) {
        const double phi = k_n * std::atanh(beta * x / L);
        return {phi, std::sin(phi), std::cos(phi)};
    }
    // n pi - phi = k_n atanh(beta (L - x) / (L - beta^2 x))
    const double psi = k_n * std::atanh(beta * (L - x) / (L - beta * beta * x));
    const double par = (n % 2 == 0) ? -1.0 : 1.0;  // (-1)^{n+1}
    return {n * kPi - psi, par * std::sin(psi), -par * std::cos(psi)};
}

void check_inside(double x, double L, const char* who) {
    if (!(x >= 0.0) || x > L) throw DomainError(std::string(who) + ": x outside cavity [0, L(t)]");
}

ComplexSample eval_moving_point(const PhysicalConfig& cfg, const ModeData& mode, double C,
                                double t, double x, const bessel::AsymptoticPolicy& policy) {
    using namespace ddops;
    const double L = wall_position(cfg, t);
    check_inside(x, L, "psi_moving");

    const dd z = z_arg_dd(cfg, t, x);
    const double zd = z.to_double();
    const auto parts = phi_parts(mode.k_n, mode.n, cfg.beta, L, x);

    const bessel::Order order(mode.k_n, mode.branch == Branch::particle
                                            ? bessel::BranchSign::negative
                                            : bessel::BranchSign::positive);
    const bessel::ScaledPair bp = bessel::scaled_j_pair(order, z, policy);

    const double lamc = cfg.lambda_c();
    const double sq = cfg.beta * lamc * zd;  // sqrt(L^2 - beta^2 x^2)
    const double dtz = cfg.c * L / (lamc * sq);
    const double dxz = -cfg.beta * x / (lamc * sq);
    const double dtphi = -mode.k_n * cfg.beta * cfg.beta * cfg.c * x / (sq * sq);
    const double dxphi = mode.k_n * cfg.beta * L / (sq * sq);

    const double pref = C * std::sqrt(kPi / (2.0 * cfg.beta * cfg.c * cfg.hbar));

    ComplexSample s;
    s.t = t;
    s.x = x;
    s.value = pref * bp.j * parts.sin_phi;
    s.dt = pref * (bp.djdz * (dtz * parts.sin_phi) + bp.j * (parts.cos_phi * dtphi));
    s.dx = pref * (bp.djdz * (dxz * parts.sin_phi) + bp.j * (parts.cos_phi * dxphi));
    return s;
}

double kg_density_of(const ComplexSample& s, double hbar) {
    return -2.0 * hbar * std::imag(std::conj(s.value) * s.dt);
}

struct NormKey {
    double mass, L0, beta, c, hbar;
    int n;
    int branch;
    int max_terms;
    double regime_threshold;
    int precision_bits;
    double accuracy_target;

    bool operator<(const NormKey& o) const {
        return std::tie(mass, L0, beta, c, hbar, n, branch, max_terms, regime_threshold,
                        precision_bits, accuracy_target) <
               std::tie(o.mass, o.L0, o.beta, o.c, o.hbar, o.n, o.branch, o.max_terms,
                        o.regime_threshold, o.precision_bits, o.accuracy_target);
    }
};

std::map<NormKey, double>& norm_cache() {
    static std::map<NormKey, double> cache;
    return cache;
}
std::mutex norm_mutex;

}  // namespace

void PhysicalConfig::validate() const {
    if (!(mass > 0.0)) throw ConfigError("mass must be positive");
    if (!(L0 > 0.0)) throw ConfigError("L0 must be positive");
    if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
    if (!(c > 0.0)) throw ConfigError("c must be positive");
    if (!(hbar > 0.0)) throw ConfigError("hbar must be positive");
}

ModeData ModeData::make(const PhysicalConfig& cfg, int n, Branch branch) {
    if (n < 1) throw DomainError("ModeData: n must be >= 1");
    ModeData m;
    m.n = n;
    m.branch = branch;
    // ln((1+beta)/(1-beta)) via log1p for accuracy at small beta
    const double lnq = std::log1p(cfg.beta) - std::log1p(-cfg.beta);
    m.k_n = 2.0 * n * kPi / lnq;
    m.p_n = n * kPi * cfg.hbar / cfg.L0;
    m.E_n = std::hypot(cfg.mass * cfg.c * cfg.c, m.p_n * cfg.c);
    return m;
}

double wall_position(const PhysicalConfig& cfg, double t) {
    if (t < 0.0) throw DomainError("wall_position: t must be >= 0");
    return cfg.L0 + cfg.beta * cfg.c * t;
}

dd z_arg_dd(const PhysicalConfig& cfg, double t, double x) {
    using namespace ddops;
    const dd vc = two_prod(cfg.beta, cfg.c);
    const dd L = add(dd(cfg.L0), mul(vc, t));
    check_inside(x, L.to_double(), "z_arg");
    const dd bx = two_prod(cfg.beta, x);
    const dd arg = sub(mul(L, L), mul(bx, bx));
    const dd lamc = div(dd(cfg.hbar), two_prod(cfg.mass, cfg.c));
    return div(ddops::sqrt(arg), mul(lamc, cfg.beta));
}

double z_arg(const PhysicalConfig& cfg, double t, double x) {
    return z_arg_dd(cfg, t, x).to_double();
}

double phase_phi(const PhysicalConfig& cfg, const ModeData& mode, double t, double x) {
    const double L = wall_position(cfg, t);
    check_inside(x, L, "phase_phi");
    return phi_parts(mode.k_n, mode.n, cfg.beta, L, x).phi;
}

ComplexSample phi_static(const PhysicalConfig& cfg, const ModeData& mode, double t, double x) {
    check_inside(x, cfg.L0, "phi_static");
    const double N = 1.0 / std::sqrt(mode.E_n * cfg.L0);
    const double u = x / cfg.L0;
    const double sn = sinpi(mode.n * u);
    const double cn = cospi(mode.n * u);
    const double sgn = (mode.branch == Branch::particle) ? -1.0 : +1.0;
    const double theta = sgn * mode.E_n * t / cfg.hbar;
    const cplx ph{std::cos(theta), std::sin(theta)};

    ComplexSample s;
    s.t = t;
    s.x = x;
    s.value = N * ph * sn;
    s.dt = cplx(0.0, sgn * mode.E_n / cfg.hbar) * s.value;
    s.dx = N * ph * cn * (mode.n * kPi / cfg.L0);
    return s;
}

double mode_velocity(const PhysicalConfig& cfg, const ModeData& mode) {
    return mode.p_n * cfg.c * cfg.c / mode.E_n;
}

double normalization_constant(const PhysicalConfig& cfg, const ModeData& mode,
                              const bessel::AsymptoticPolicy& policy) {
    NormKey key{cfg.mass, cfg.L0,
                cfg.beta, cfg.c,
                cfg.hbar, mode.n,
                static_cast<int>(mode.branch), policy.max_terms,
                policy.regime_threshold, policy.precision_bits,
                policy.accuracy_target};
    {
        std::lock_guard<std::mutex> lock(norm_mutex);
        auto it = norm_cache().find(key);
        if (it != norm_cache().end()) return it->second;
    }

    // KG self-norm with C = 1, composite Simpson at t = 0. The density of a
    // single mode is smooth (the Bessel phases cancel in Im(psi* dt psi)), so
    // the grid only needs to resolve sin^2(phi_n).
    long M = std::max<long>(769, 96L * mode.n + 1);
    if (M % 2 == 0) ++M;
    const double h = cfg.L0 / static_cast<double>(M - 1);
    std::vector<double> w(M);
    for (long i = 0; i < M; ++i) {
        const double x = (i == M - 1) ? cfg.L0 : i * h;
        const ComplexSample s = eval_moving_point(cfg, mode, 1.0, 0.0, x, policy);
        double rho = kg_density_of(s, cfg.hbar);
        double wt = (i == 0 || i == M - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        w[i] = wt * rho;
    }
    const double integral = pairwise_sum(w) * h / 3.0;
    const double expected_sign = (mode.branch == Branch::particle) ? 1.0 : -1.0;
    if (integral * expected_sign <= 0.0)
        throw DomainError("normalization_constant: KG norm has unexpected sign");
    const double C = 1.0 / std::sqrt(std::abs(integral));

    std::lock_guard<std::mutex> lock(norm_mutex);
    norm_cache().emplace(key, C);
    return C;
}

ComplexSample psi_moving(const PhysicalConfig& cfg, const ModeData& mode, double t, double x,
                         const bessel::AsymptoticPolicy& policy) {
    const double C = normalization_constant(cfg, mode, policy);
    return eval_moving_point(cfg, mode, C, t, x, policy);
}

ComplexSample schrodinger_moving(const PhysicalConfig& cfg, int n, double t, double x) {
    const double v = cfg.wall_speed();
    const double L = cfg.L0 + v * t;
    check_inside(x, L, "schrodinger_moving");
    const double u = x / L;
    const double sn = sinpi(n * u);
    const double cn = cospi(n * u);
    const double A = kPi * kPi * cfg.hbar * n * n * t / (2.0 * cfg.mass * cfg.L0 * L);
    const double B = cfg.mass * v * x * x / (2.0 * cfg.hbar * L);
    const double amp = std::sqrt(2.0 / L);
    const cplx ph{std::cos(B - A), std::sin(B - A)};

    ComplexSample s;
    s.t = t;
    s.x = x;
    s.value = amp * ph * sn;
    const cplx dlog_t{-v / (2.0 * L),
                      -kPi * kPi * cfg.hbar * n * n / (2.0 * cfg.mass * L * L) -
                          cfg.mass * v * v * x * x / (2.0 * cfg.hbar * L * L)};
    s.dt = s.value * dlog_t + amp * ph * cn * (-n * kPi * x * v / (L * L));
    s.dx = s.value * cplx(0.0, cfg.mass * v * x / (cfg.hbar * L)) +
           amp * ph * cn * (n * kPi / L);
    return s;
}

void require_nonrel_regime(const PhysicalConfig& cfg) {
    const double z0 = cfg.L0 / (cfg.lambda_c() * cfg.beta);
    const double k1 = 2.0 * kPi / (std::log1p(cfg.beta) - std::log1p(-cfg.beta));
    if (cfg.beta > 0.1 || z0 < 1e4 || k1 * k1 / z0 > 0.05)
        throw RegimeError("non-relativistic regime required: need beta << 1, z >> 1, k_1^2/z << 1");
}

double nonrel_phase_check(const PhysicalConfig& cfg, const ModeData& mode, double t, double x,
                          const bessel::AsymptoticPolicy& policy) {
    (void)policy;
    require_nonrel_regime(cfg);
    using namespace ddops;
    const dd z_tx = z_arg_dd(cfg, t, x);
    const dd z_00 = z_arg_dd(cfg, 0.0, 0.0);
    const double k2 = 4.0 * mode.k_n * mode.k_n + 1.0;
    const dd corr_tx = div(dd(k2), mul(z_tx, 8.0));
    const dd corr_00 = div(dd(k2), mul(z_00, 8.0));
    const dd lhs = sub(sub(z_tx, corr_tx), sub(z_00, corr_00));

    const double L = wall_position(cfg, t);
    const double v = cfg.wall_speed();
    const double target = cfg.rest_energy() * t / cfg.hbar - cfg.mass * v * x * x / (2.0 * cfg.hbar * L) +
                          cfg.hbar * mode.n * mode.n * kPi * kPi * t / (2.0 * cfg.mass * cfg.L0 * L);
    return std::abs(lhs.to_double() - target);
}

MovingStateEvaluator::MovingStateEvaluator(const PhysicalConfig& cfg, const ModeData& mode,
                                           const bessel::AsymptoticPolicy& policy)
    : cfg_(cfg), mode_(mode), policy_(policy), C_(normalization_constant(cfg, mode, policy)) {}

ComplexSample MovingStateEvaluator::operator()(double t, double x) const {
    return eval_moving_point(cfg_, mode_, C_, t, x, policy_);
}

}  // namespace kgc
