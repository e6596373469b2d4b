#include "bessel_extended.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kgc/errors.hpp"

namespace kgc::detail {

namespace {

// B_{2j} for j = 1..26 as exact rationals.
struct BernoulliEntry {
    const char* num;
    const char* den;
};
constexpr BernoulliEntry kBernoulli[] = {
    {"1", "6"},
    {"-1", "30"},
    {"1", "42"},
    {"-1", "30"},
    {"5", "66"},
    {"-691", "2730"},
    {"7", "6"},
    {"-3617", "510"},
    {"43867", "798"},
    {"-174611", "330"},
    {"854513", "138"},
    {"-236364091", "2730"},
    {"8553103", "6"},
    {"-23749461029", "870"},
    {"8615841276005", "14322"},
    {"-7709321041217", "510"},
    {"2577687858367", "6"},
    {"-26315271553053477373", "1919190"},
    {"2929993913841559", "6"},
    {"-261082718496449122051", "13530"},
    {"1520097643918070802691", "1806"},
    {"-27833269579301024235023", "690"},
    {"596451111593912163277961", "282"},
    {"-5609403368997817686249127547", "46410"},
    {"495057205241079648212477525", "66"},
    {"-801165718135489957347924991853", "1590"},
};
constexpr int kBernoulliCount = 26;

}  // namespace

MpCx lgamma_complex(const MpReal& x, const MpReal& y, long prec_bits) {
    const long prec = prec_bits + 32;
    // Lift the argument until Stirling with kBernoulliCount terms certifies
    // the target precision: remainder ~ |B_{2J+2}| / ((2J+2)(2J+1) |w|^{2J+1}).
    const double ln_b_next = 65.8;  // ln |B_54|
    double wmin = std::exp((ln_b_next + (static_cast<double>(prec) + 8.0) * 0.6931471805599453 -
                            std::log(54.0 * 53.0)) /
                           53.0);
    wmin = std::max(wmin, 16.0);

    long lift = 0;
    double xr = x.to_double();
    if (xr < wmin) lift = static_cast<long>(std::ceil(wmin - xr));

    // product of (w + j), j = 0..lift-1
    MpCx prod(1.0, 0.0, prec);
    MpCx wl(x, y);
    for (long j = 0; j < lift; ++j) {
        prod = prod * wl;
        wl.re = wl.re + 1.0;
    }

    // Stirling at wl: (w-1/2) ln w - w + ln(2 pi)/2 + sum B_{2j}/(2j(2j-1) w^{2j-1})
    MpCx lw = log(wl);
    MpCx half(0.5, 0.0, prec);
    MpCx res = (wl - half) * lw - wl;
    MpReal two_pi_ = MpReal::pi(prec) * 2.0;
    res.re = res.re + log(two_pi_) * 0.5;

    MpCx w2 = wl * wl;
    MpCx winv_pow = MpCx(1.0, 0.0, prec) / wl;  // w^{-(2j-1)} running power
    for (int j = 1; j <= kBernoulliCount; ++j) {
        MpReal b2j = MpReal(kBernoulli[j - 1].num, prec) / MpReal(kBernoulli[j - 1].den, prec);
        MpReal coef = b2j / static_cast<double>(2 * j * (2 * j - 1));
        res = res + winv_pow * coef;
        winv_pow = winv_pow / w2;
    }
    if (lift > 0) res = res - log(prod);
    return res;
}

long series_required_bits(double nu, double z) {
    // Peak term ~ exp(z)/(pi z); result ~ exp(pi nu / 2) sqrt(2/(pi z)).
    double ln_peak = z - std::log(3.141592653589793 * std::max(z, 1.0));
    double ln_result = 1.5707963267948966 * nu + 0.5 * std::log(2.0 / (3.141592653589793 * z));
    double cancel = std::max(0.0, ln_peak - ln_result) / 0.6931471805599453;
    return static_cast<long>(cancel) + 96;
}

MpSeriesResult series_j_mp(int delta, double nu_signed, double z, long prec_bits) {
    if (!(z > 0.0)) throw DomainError("series_j_mp: z must be positive");
    const double nu = std::abs(nu_signed);
    const long needed = series_required_bits(nu, z);
    if (needed > prec_bits)
        throw PrecisionExhausted("ascending series at z=" + std::to_string(z) + " needs ~" +
                                 std::to_string(needed) + " bits > precision_bits=" +
                                 std::to_string(prec_bits) + "; raise precision_bits");
    if (prec_bits > (1L << 22))
        throw PrecisionExhausted("precision_bits beyond supported maximum 2^22");

    const long prec = prec_bits;
    const MpReal q = MpReal(z, prec) * MpReal(z, prec) * 0.25;

    // sum over k of t_k, t_0 = 1, t_{k+1} = -t_k q / ((k+1)(mu+k+1))
    MpCx t(1.0, 0.0, prec);
    MpCx sum = t;
    MpReal maxmag(1.0, prec);
    const double k_peak = 0.5 * z;
    const long k_cap = static_cast<long>(4.0 * k_peak) + prec_bits + 64;
    MpReal tiny(prec);
    mpfr_set_ui_2exp(tiny.get(), 1, static_cast<mpfr_exp_t>(-prec + 2), MPFR_RNDN);

    long k = 0;
    for (; k < k_cap; ++k) {
        // Denominator (k+1)(mu+k+1) formed in working precision: a per-term
        // double rounding of (k+1) nu would cap the cancellation at ~53 bits.
        const double kp1 = static_cast<double>(k + 1);
        MpCx denom(MpReal(kp1 * (delta + kp1), prec), MpReal(kp1, prec) * nu_signed);
        t = (t * q) / denom;
        t.re = -t.re;
        t.im = -t.im;
        sum = sum + t;
        MpReal m = t.mag1();
        if (m > maxmag) maxmag = m;
        if (static_cast<double>(k) > k_peak && m < tiny * (sum.mag1() + 1.0)) break;
    }

    // prefactor (z/2)^mu / Gamma(mu + 1), moderate precision suffices for a
    // double-rounded result but keep full prec for mp consumers.
    const long prec_pf = std::min<long>(prec, 512);
    MpReal lnz2 = log(MpReal(z, prec) * 0.5);
    MpCx expo(lnz2 * static_cast<double>(delta), lnz2 * nu_signed);
    MpCx lg = lgamma_complex(MpReal(1.0 + delta, prec_pf), MpReal(nu_signed, prec_pf), prec_pf);
    MpCx pf = exp(expo - lg);

    MpSeriesResult out{sum * pf, MpReal(prec), k + 1};
    // Roundoff: each term contributes O(2^-prec) of its magnitude; certified
    // against the spec bound 2^{-prec/2} * max |partial sum|.
    MpReal eps_round = maxmag * static_cast<double>(k + 4);
    mpfr_mul_2si(eps_round.get(), eps_round.get(), static_cast<long>(-prec + 2), MPFR_RNDN);
    MpReal trunc = t.mag1() * 2.0;
    out.abs_error = (eps_round + trunc) * pf.mag1();

    MpReal certify = maxmag * pf.mag1();
    mpfr_mul_2si(certify.get(), certify.get(), -prec / 2, MPFR_RNDN);
    if (out.abs_error > certify)
        throw PrecisionExhausted("series cancellation exceeds certified bound; raise precision_bits");
    return out;
}

namespace {

SeriesEval round_result(const MpCx& v, const MpReal& err, double nu, bool scaled, bool huge_ok) {
    MpCx val = v;
    MpReal e = err;
    if (scaled) {
        MpReal s = sech(MpReal::pi(v.prec()) * 0.5 * nu);
        val = val * s;
        e = e * s;
    }
    SeriesEval out{val.to_complex(), e.to_double()};
    if (!huge_ok && (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())))
        throw OverflowWithoutScaling("unscaled Bessel value overflows double; use the scaled API");
    // The returned double is itself rounded; never report less than that.
    out.abs_error = std::max(out.abs_error, std::abs(out.value) * 1.2e-16);
    return out;
}

}  // namespace

SeriesEval series_j(int delta, double nu_signed, double z, long prec_bits, bool scaled) {
    // Negative integer order with nu = 0: J_{-m} = (-1)^m J_m (1/Gamma at the
    // poles silently zeroes the leading terms otherwise).
    if (nu_signed == 0.0 && delta < 0) {
        SeriesEval r = series_j(-delta, 0.0, z, prec_bits, scaled);
        if (delta % 2 != 0) r.value = -r.value;
        return r;
    }
    MpSeriesResult r = series_j_mp(delta, nu_signed, z, prec_bits);
    return round_result(r.value, r.abs_error, std::abs(nu_signed), scaled, false);
}

SeriesEval series_y(int delta, double nu_signed, double z, long prec_bits, bool scaled) {
    const long prec = prec_bits;
    const double nu = std::abs(nu_signed);
    if (nu == 0.0 && delta == 0) {
        // Classical Y0 series: (2/pi)[(ln(z/2)+gamma) J0 + sum (-1)^{k+1} H_k q^k/(k!)^2]
        MpSeriesResult j0 = series_j_mp(0, 0.0, z, prec_bits);
        MpReal q = MpReal(z, prec) * MpReal(z, prec) * 0.25;
        MpReal term(1.0, prec), hk(prec), s(prec);
        long k_cap = static_cast<long>(2.0 * z) + prec_bits + 64;
        MpReal tiny(prec);
        mpfr_set_ui_2exp(tiny.get(), 1, static_cast<mpfr_exp_t>(-prec + 2), MPFR_RNDN);
        MpReal maxmag(1.0, prec);
        for (long k = 1; k < k_cap; ++k) {
            term = term * q / static_cast<double>(k) / static_cast<double>(k);
            hk = hk + 1.0 / MpReal(static_cast<double>(k), prec);
            MpReal contrib = term * hk;
            if (k % 2 == 1)
                s = s + contrib;
            else
                s = s - contrib;
            if (contrib > maxmag) maxmag = contrib;
            if (static_cast<double>(k) > 0.5 * z && contrib < tiny * (abs(s) + 1.0)) break;
        }
        MpReal pi_ = MpReal::pi(prec);
        MpReal y0 = ((log(MpReal(z, prec) * 0.5) + MpReal::euler_gamma(prec)) * j0.value.re + s) *
                    (2.0 / pi_);
        MpReal err = (j0.abs_error + maxmag * 1e-30) * (2.0 / pi_);
        return {{y0.to_double(), 0.0}, abs(err).to_double()};
    }
    if (nu == 0.0) throw DomainError("series_y: integer real order with delta != 0 unsupported");

    // Reflection: Y_mu = (J_mu cos(mu pi) - J_{-mu}) / sin(mu pi), mu = delta + i nu_s.
    MpSeriesResult jp = series_j_mp(delta, nu_signed, z, prec_bits);
    MpSeriesResult jm = series_j_mp(-delta, -nu_signed, z, prec_bits);
    MpReal pi_ = MpReal::pi(prec);
    MpReal ch = cosh(pi_ * nu_signed), sh = sinh(pi_ * nu_signed);
    double par = (delta % 2 == 0) ? 1.0 : -1.0;
    // cos(mu pi) = par * cosh(nu_s pi); sin(mu pi) = par * i sinh(nu_s pi)
    MpCx num = jp.value * (ch * par) - jm.value;
    MpCx den(MpReal(prec), sh * par);
    MpCx y = num / den;
    MpReal err = (jp.abs_error * ch + jm.abs_error) / abs(sh);
    return round_result(y, err, nu, scaled, false);
}

std::pair<double, double> asymptotic_jt_yt_mp(double nu, double z, long prec_bits) {
    const long prec = prec_bits;
    // A_s(i nu) recurrence, summed until terms fall below 2^-prec or diverge.
    MpReal a(1.0, prec);
    MpReal zp(1.0, prec);
    MpReal p(1.0, prec), qsum(prec);
    MpReal zr = MpReal(z, prec);
    MpReal last = abs(a);
    MpReal tiny(prec);
    mpfr_set_ui_2exp(tiny.get(), 1, static_cast<mpfr_exp_t>(-prec - 8), MPFR_RNDN);
    const MpReal nu4 = MpReal(nu, prec) * nu * 4.0;
    const int s_cap = 64;
    for (int s = 1; s <= s_cap; ++s) {
        double odd = 2.0 * s - 1.0;
        a = a * ((nu4 + odd * odd) / (-8.0 * s));
        zp = zp / zr;
        MpReal term = a * zp;
        MpReal mag = abs(term);
        if (mag > last && s > 4) break;  // past the least term
        last = mag;
        // (-1)^s factors: P += (-1)^{s/2} a_s/z^s for even s, Q likewise odd.
        int half = s / 2;
        bool neg = (half % 2) == 1;
        if (s % 2 == 0)
            p = neg ? p - term : p + term;
        else
            qsum = neg ? qsum - term : qsum + term;
        if (mag < tiny) break;
    }
    MpReal pi_ = MpReal::pi(prec);
    MpReal theta = zr - pi_ * 0.25;
    MpReal st(prec), ct(prec);
    mpfr_sin_cos(st.get(), ct.get(), theta.get(), MPFR_RNDN);
    MpReal amp = sqrt(2.0 / (pi_ * zr));
    MpReal jt = amp * (ct * p - st * qsum);
    MpReal yt = amp * (st * p + ct * qsum);
    return {jt.to_double(), yt.to_double()};
}

std::pair<double, double> diagnostic_mp(double nu, double z, long prec_bits) {
    const long prec = prec_bits;
    MpReal a(1.0, prec);
    MpReal zp(1.0, prec);
    MpReal p(1.0, prec), qsum(prec);
    MpReal zr = MpReal(z, prec);
    MpReal last = abs(a);
    MpReal tiny(prec);
    mpfr_set_ui_2exp(tiny.get(), 1, static_cast<mpfr_exp_t>(-prec - 8), MPFR_RNDN);
    const MpReal nu4 = MpReal(nu, prec) * nu * 4.0;
    for (int s = 1; s <= 64; ++s) {
        double odd = 2.0 * s - 1.0;
        a = a * ((nu4 + odd * odd) / (-8.0 * s));
        zp = zp / zr;
        MpReal term = a * zp;
        MpReal mag = abs(term);
        if (mag > last && s > 4) break;
        last = mag;
        int half = s / 2;
        bool neg = (half % 2) == 1;
        if (s % 2 == 0)
            p = neg ? p - term : p + term;
        else
            qsum = neg ? qsum - term : qsum + term;
        if (mag < tiny) break;
    }
    MpReal pi_ = MpReal::pi(prec);
    MpReal theta = zr - pi_ * 0.25;
    MpReal st(prec), ct(prec);
    mpfr_sin_cos(st.get(), ct.get(), theta.get(), MPFR_RNDN);
    MpReal th = tanh(pi_ * 0.5 * nu);
    // scaled J over sqrt(2/(pi z)): (cos P - sin Q) + i tanh (sin P + cos Q)
    MpReal dre = ct * p - st * qsum;
    MpReal dim = (st * p + ct * qsum) * th;
    // phase form e^{i (z - (4nu^2+1)/(8z) - pi/4)}
    MpReal phase = zr - (MpReal(nu, prec) * nu * 4.0 + 1.0) / (zr * 8.0) - pi_ * 0.25;
    MpReal sp(prec), cp(prec);
    mpfr_sin_cos(sp.get(), cp.get(), phase.get(), MPFR_RNDN);
    return {(dre - cp).to_double(), (dim - sp).to_double()};
}

}  // namespace kgc::detail
