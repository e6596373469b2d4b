#include "kgc/bessel_im.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bessel_extended.hpp"
#include "kgc/errors.hpp"

namespace kgc::bessel {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// cosh(pi nu / 2) overflows double past this.
constexpr double kUnscaledNuMax = 2.0 * 709.0 / kPi;

struct Cx {
    double re = 0.0, im = 0.0;
};

// P and Q sums of the large-z expansion for order mu = delta + i*snu,
// truncated after `terms` coefficients A_0..A_{terms-1}; `first_omitted`
// returns |A_terms|/z^terms.
void pq_sums(int delta, double snu, double z, int terms, Cx& p, Cx& q, double& first_omitted) {
    // 4 mu^2 = 4(delta^2 - snu^2) + 8 i delta snu
    const double mu4_re = 4.0 * (delta * delta - snu * snu);
    const double mu4_im = 8.0 * delta * snu;
    Cx a{1.0, 0.0};
    p = {1.0, 0.0};
    q = {0.0, 0.0};
    double zp = 1.0;
    double a_mag_last = 1.0;
    for (int s = 1; s <= terms; ++s) {
        const double odd = 2.0 * s - 1.0;
        const double fr = (mu4_re - odd * odd) / (8.0 * s);
        const double fi = mu4_im / (8.0 * s);
        a = {a.re * fr - a.im * fi, a.re * fi + a.im * fr};
        zp /= z;
        a_mag_last = std::hypot(a.re, a.im);
        if (s == terms) {
            first_omitted = a_mag_last * zp;
            break;
        }
        const int half = s / 2;
        const double sgn = (half % 2 == 0) ? 1.0 : -1.0;
        if (s % 2 == 0) {
            p.re += sgn * a.re * zp;
            p.im += sgn * a.im * zp;
        } else {
            q.re += sgn * a.re * zp;
            q.im += sgn * a.im * zp;
        }
    }
    if (terms <= 0) first_omitted = 1.0;
}

// Real-coefficient specialization for delta = 0 (A_s(i nu) real).
void pq_sums_real(double nu, double z, int terms, double& p, double& q, double& first_omitted) {
    double a = 1.0;
    p = 1.0;
    q = 0.0;
    double zp = 1.0;
    for (int s = 1; s <= terms; ++s) {
        const double odd = 2.0 * s - 1.0;
        a *= -(4.0 * nu * nu + odd * odd) / (8.0 * s);
        zp /= z;
        if (s == terms) {
            first_omitted = std::abs(a) * zp;
            break;
        }
        const int half = s / 2;
        const double sgn = (half % 2 == 0) ? 1.0 : -1.0;
        if (s % 2 == 0)
            p += sgn * a * zp;
        else
            q += sgn * a * zp;
    }
    if (terms <= 0) first_omitted = 1.0;
}

struct Trig {
    double c, s;  // cos/sin of (z - pi/4) after exact-range reduction
};

Trig reduced_trig(const dd& z) {
    using namespace ddops;
    const double th = reduce_phase(sub(z, mul(pi(), 0.25)));
    return {std::cos(th), std::sin(th)};
}

// Scaled J_{mu}(z)/cosh(pi nu/2) for mu = delta + i*snu via the expansion,
// reusing the caller's reduced trig of theta = z - pi/4.
Cx scaled_j_asym_shift(int delta, double snu, double z, const Trig& t, double tanh_half,
                       int terms, double& err) {
    // cos/sin of a = theta - delta*pi/2
    double ca, sa;
    if (delta == 0) {
        ca = t.c;
        sa = t.s;
    } else if (delta == 1) {
        ca = t.s;
        sa = -t.c;
    } else {
        ca = -t.s;
        sa = t.c;
    }
    const double sgn = (snu >= 0.0) ? 1.0 : -1.0;
    // C = cos(omega)/cosh = ca + i sgn tanh sa ; S = sa - i sgn tanh ca
    Cx C{ca, sgn * tanh_half * sa};
    Cx S{sa, -sgn * tanh_half * ca};
    Cx p, q;
    double fo = 0.0;
    pq_sums(delta, snu, z, terms, p, q, fo);
    const double amp = std::sqrt(2.0 / (kPi * z));
    Cx r{C.re * p.re - C.im * p.im - (S.re * q.re - S.im * q.im),
         C.re * p.im + C.im * p.re - (S.re * q.im + S.im * q.re)};
    err = 2.0 * amp * fo;
    return {amp * r.re, amp * r.im};
}

ScaledPair scaled_pair_series(const Order& nu, double z, const AsymptoticPolicy& policy) {
    const double snu = nu.signed_nu();
    ScaledPair out;
    out.method = EvalMethod::series;
    if (nu.nu == 0.0) {
        auto j0 = detail::series_j(0, 0.0, z, policy.precision_bits, true);
        auto j1 = detail::series_j(1, 0.0, z, policy.precision_bits, true);
        out.j = j0.value;
        out.djdz = -j1.value;
        out.abs_error = j0.abs_error + j1.abs_error;
        return out;
    }
    auto jc = detail::series_j(0, snu, z, policy.precision_bits, true);
    auto jm = detail::series_j(-1, snu, z, policy.precision_bits, true);
    auto jp = detail::series_j(+1, snu, z, policy.precision_bits, true);
    out.j = jc.value;
    out.djdz = 0.5 * (jm.value - jp.value);
    out.abs_error = jc.abs_error + 0.5 * (jm.abs_error + jp.abs_error);
    return out;
}

}  // namespace

Order::Order(double nu_, BranchSign sign_) : nu(nu_), sign(sign_) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw DomainError("Order: nu must be finite and non-negative");
}

double coefficient_a(int s, const Order& nu) {
    if (s < 0) throw DomainError("coefficient_a: s must be >= 0");
    double a = 1.0;
    for (int j = 1; j <= s; ++j) {
        const double odd = 2.0 * j - 1.0;
        a *= -(4.0 * nu.nu * nu.nu + odd * odd) / (8.0 * j);
    }
    return a;
}

bool asymptotic_ok(double nu, double z, const AsymptoticPolicy& policy) {
    if (!(z > 0.0)) return false;
    if (nu * nu / z > policy.regime_threshold) return false;
    double p, q, fo;
    pq_sums_real(nu, z, policy.max_terms, p, q, fo);
    return 2.0 * std::sqrt(2.0 / (kPi * z)) * fo <= policy.accuracy_target;
}

EvalResult series_j_imag(const Order& nu, double z, int precision_bits) {
    if (!(z > 0.0)) throw DomainError("series_j_imag: z must be positive");
    auto r = detail::series_j(0, nu.signed_nu(), z, precision_bits, false);
    return {r.value, r.abs_error, EvalMethod::series, false};
}

std::pair<EvalResult, EvalResult> scaled_jt_yt(const Order& nu, double z,
                                               const AsymptoticPolicy& policy) {
    if (!(z > 0.0)) throw DomainError("scaled_jt_yt: z must be positive");
    if (asymptotic_ok(nu.nu, z, policy)) {
        double p, q, fo;
        pq_sums_real(nu.nu, z, policy.max_terms, p, q, fo);
        const Trig t = reduced_trig(dd(z));
        const double amp = std::sqrt(2.0 / (kPi * z));
        const double err = amp * fo;
        EvalResult jt{{amp * (t.c * p - t.s * q), 0.0}, err, EvalMethod::asymptotic, true};
        EvalResult yt{{amp * (t.s * p + t.c * q), 0.0}, err, EvalMethod::asymptotic, true};
        return {jt, yt};
    }
    // Fallback: Jt = sech(pi nu/2) Re J_{i nu}, Yt likewise from Y.
    auto js = detail::series_j(0, nu.nu, z, policy.precision_bits, true);
    auto ys = detail::series_y(0, nu.nu, z, policy.precision_bits, true);
    EvalResult jt{{js.value.real(), 0.0}, js.abs_error, EvalMethod::series, true};
    EvalResult yt{{ys.value.real(), 0.0}, ys.abs_error, EvalMethod::series, true};
    return {jt, yt};
}

namespace {

EvalResult apply_scaling(std::complex<double> scaled_value, double err, EvalMethod method,
                         double nu, Scaling scaling, const char* who) {
    const bool can_unscale = nu < kUnscaledNuMax;
    if (scaling == Scaling::scaled || (scaling == Scaling::automatic && !can_unscale))
        return {scaled_value, err, method, true};
    if (!can_unscale)
        throw OverflowWithoutScaling(std::string(who) +
                                     ": cosh(pi nu/2) overflows; request scaled output");
    const double ch = std::cosh(0.5 * kPi * nu);
    return {scaled_value * ch, err * ch, method, false};
}

}  // namespace

EvalResult j_imag(const Order& nu, double z, const AsymptoticPolicy& policy, Scaling scaling) {
    if (!(z > 0.0)) throw DomainError("j_imag: z must be positive");
    const double snu = nu.signed_nu();
    const double th = std::tanh(0.5 * kPi * nu.nu);
    if (asymptotic_ok(nu.nu, z, policy)) {
        const Trig t = reduced_trig(dd(z));
        double err = 0.0;
        Cx v = scaled_j_asym_shift(0, snu, z, t, th, policy.max_terms, err);
        return apply_scaling({v.re, v.im}, err, EvalMethod::asymptotic, nu.nu, scaling, "j_imag");
    }
    auto r = detail::series_j(0, snu, z, policy.precision_bits, true);
    return apply_scaling(r.value, r.abs_error, EvalMethod::series, nu.nu, scaling, "j_imag");
}

EvalResult y_imag(const Order& nu, double z, const AsymptoticPolicy& policy, Scaling scaling) {
    if (!(z > 0.0)) throw DomainError("y_imag: z must be positive");
    const double sgn = nu.sign == BranchSign::positive ? 1.0 : -1.0;
    const double th = std::tanh(0.5 * kPi * nu.nu);
    if (asymptotic_ok(nu.nu, z, policy)) {
        double p, q, fo;
        pq_sums_real(nu.nu, z, policy.max_terms, p, q, fo);
        const Trig t = reduced_trig(dd(z));
        const double amp = std::sqrt(2.0 / (kPi * z));
        const double jt = amp * (t.c * p - t.s * q);
        const double yt = amp * (t.s * p + t.c * q);
        // Y_{i nu}/cosh = Yt - i sgn tanh Jt
        return apply_scaling({yt, -sgn * th * jt}, 2.0 * amp * fo, EvalMethod::asymptotic, nu.nu,
                             scaling, "y_imag");
    }
    auto r = detail::series_y(0, nu.signed_nu(), z, policy.precision_bits, true);
    return apply_scaling(r.value, r.abs_error, EvalMethod::series, nu.nu, scaling, "y_imag");
}

EvalResult dj_dz(const Order& nu, double z, const AsymptoticPolicy& policy, Scaling scaling) {
    if (!(z > 0.0)) throw DomainError("dj_dz: z must be positive");
    ScaledPair pr = scaled_j_pair(nu, dd(z), policy);
    return apply_scaling(pr.djdz, pr.abs_error, pr.method, nu.nu, scaling, "dj_dz");
}

ScaledPair scaled_j_pair(const Order& nu, const dd& z, const AsymptoticPolicy& policy) {
    const double zd = z.to_double();
    if (!(zd > 0.0)) throw DomainError("scaled_j_pair: z must be positive");
    const double snu = nu.signed_nu();
    if (asymptotic_ok(nu.nu, zd, policy)) {
        const Trig t = reduced_trig(z);
        const double th = std::tanh(0.5 * kPi * nu.nu);
        ScaledPair out;
        out.method = EvalMethod::asymptotic;
        double e0 = 0.0, em = 0.0, ep = 0.0;
        Cx j0 = scaled_j_asym_shift(0, snu, zd, t, th, policy.max_terms, e0);
        Cx jm = scaled_j_asym_shift(-1, snu, zd, t, th, policy.max_terms, em);
        Cx jp = scaled_j_asym_shift(+1, snu, zd, t, th, policy.max_terms, ep);
        out.j = {j0.re, j0.im};
        out.djdz = {0.5 * (jm.re - jp.re), 0.5 * (jm.im - jp.im)};
        out.abs_error = e0 + 0.5 * (em + ep);
        return out;
    }
    return scaled_pair_series(nu, zd, policy);
}

std::pair<double, double> precision_diagnostic(const Order& nu, double z,
                                               const AsymptoticPolicy& policy, bool extended) {
    if (!(z > 0.0)) throw DomainError("precision_diagnostic: z must be positive");
    if (nu.nu * nu.nu / z > policy.regime_threshold)
        throw DomainError("precision_diagnostic: asymptotic regime required (nu^2/z too large)");
    if (extended) {
        const long prec = std::max(128, policy.precision_bits);
        return detail::diagnostic_mp(nu.nu, z, prec);
    }
    // Double path. The reference is the exact-form value at the given double z
    // (high-order expansion, phase reduced without representation loss); the
    // approximation is the phase form assembled in ordinary double arithmetic,
    // whose phase rounds to ulp(z). Their gap is the round-off artifact the
    // diagnostic exists to expose.
    const double th = std::tanh(0.5 * kPi * nu.nu);
    double p = 1.0, q = 0.0, a = 1.0, zp = 1.0, last = 1.0;
    for (int s = 1; s <= 16; ++s) {
        const double odd = 2.0 * s - 1.0;
        a *= -(4.0 * nu.nu * nu.nu + odd * odd) / (8.0 * s);
        zp /= z;
        const double mag = std::abs(a) * zp;
        if (mag > last && s > 4) break;
        last = mag;
        const int half = s / 2;
        const double sgn = (half % 2 == 0) ? 1.0 : -1.0;
        if (s % 2 == 0)
            p += sgn * a * zp;
        else
            q += sgn * a * zp;
    }
    const Trig t = reduced_trig(dd(z));
    const double ref_re = t.c * p - t.s * q;
    const double ref_im = th * (t.s * p + t.c * q);
    const double phase = z - (4.0 * nu.nu * nu.nu + 1.0) / (8.0 * z) - kPi / 4.0;
    return {ref_re - std::cos(phase), ref_im - std::sin(phase)};
}

}  // namespace kgc::bessel
