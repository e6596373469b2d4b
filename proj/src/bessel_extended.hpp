#pragma once

// Extended-precision (MPFR) engine backing the series evaluation path and the
// high-accuracy references used by the precision diagnostics and tests.
// Internal header: not installed, but test code includes it for oracles.

#include <mpfr.h>

#include <complex>
#include <string>
#include <utility>

namespace kgc::detail {

// Minimal RAII wrapper over mpfr_t with explicit per-value precision.
class MpReal {
  public:
    explicit MpReal(long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_zero(v_, 1); }
    MpReal(double x, long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_d(v_, x, MPFR_RNDN); }
    MpReal(const char* s, long prec_bits) { mpfr_init2(v_, prec_bits); mpfr_set_str(v_, s, 10, MPFR_RNDN); }
    MpReal(const MpReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    MpReal(MpReal&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
    MpReal& operator=(const MpReal& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    MpReal& operator=(MpReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~MpReal() { mpfr_clear(v_); }

    long prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_negative() const { return mpfr_sgn(v_) < 0; }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

#define KGC_MP_BINOP(op, fn)                                             \
    friend MpReal operator op(const MpReal& a, const MpReal& b) {        \
        MpReal r(std::max(a.prec(), b.prec()));                          \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                 \
        return r;                                                        \
    }                                                                    \
    friend MpReal operator op(const MpReal& a, double b) {               \
        MpReal r(a.prec());                                              \
        fn##_d(r.v_, a.v_, b, MPFR_RNDN);                                \
        return r;                                                        \
    }
    KGC_MP_BINOP(+, mpfr_add)
    KGC_MP_BINOP(-, mpfr_sub)
    KGC_MP_BINOP(*, mpfr_mul)
    KGC_MP_BINOP(/, mpfr_div)
#undef KGC_MP_BINOP

    friend MpReal operator-(const MpReal& a) {
        MpReal r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator+(double a, const MpReal& b) { return b + a; }
    friend MpReal operator*(double a, const MpReal& b) { return b * a; }
    friend MpReal operator-(double a, const MpReal& b) {
        MpReal r(b.prec());
        mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator/(double a, const MpReal& b) {
        MpReal r(b.prec());
        mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }

#define KGC_MP_FUN1(name, fn)                 \
    friend MpReal name(const MpReal& a) {     \
        MpReal r(a.prec());                   \
        fn(r.v_, a.v_, MPFR_RNDN);            \
        return r;                             \
    }
    KGC_MP_FUN1(sqrt, mpfr_sqrt)
    KGC_MP_FUN1(log, mpfr_log)
    KGC_MP_FUN1(exp, mpfr_exp)
    KGC_MP_FUN1(sin, mpfr_sin)
    KGC_MP_FUN1(cos, mpfr_cos)
    KGC_MP_FUN1(abs, mpfr_abs)
    KGC_MP_FUN1(sinh, mpfr_sinh)
    KGC_MP_FUN1(cosh, mpfr_cosh)
    KGC_MP_FUN1(tanh, mpfr_tanh)
    KGC_MP_FUN1(sech, mpfr_sech)
    KGC_MP_FUN1(coth, mpfr_coth)
#undef KGC_MP_FUN1

    friend MpReal atan2(const MpReal& y, const MpReal& x) {
        MpReal r(std::max(y.prec(), x.prec()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }
    static MpReal pi(long prec_bits) {
        MpReal r(prec_bits);
        mpfr_const_pi(r.get(), MPFR_RNDN);
        return r;
    }
    static MpReal euler_gamma(long prec_bits) {
        MpReal r(prec_bits);
        mpfr_const_euler(r.get(), MPFR_RNDN);
        return r;
    }

  private:
    mpfr_t v_;
};

// Complex number over MpReal.
struct MpCx {
    MpReal re, im;

    explicit MpCx(long prec) : re(prec), im(prec) {}
    MpCx(MpReal r, MpReal i) : re(std::move(r)), im(std::move(i)) {}
    MpCx(double r, double i, long prec) : re(r, prec), im(i, prec) {}

    long prec() const { return std::max(re.prec(), im.prec()); }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    friend MpCx operator+(const MpCx& a, const MpCx& b) { return {a.re + b.re, a.im + b.im}; }
    friend MpCx operator-(const MpCx& a, const MpCx& b) { return {a.re - b.re, a.im - b.im}; }
    friend MpCx operator*(const MpCx& a, const MpCx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend MpCx operator*(const MpCx& a, const MpReal& b) { return {a.re * b, a.im * b}; }
    friend MpCx operator/(const MpCx& a, const MpReal& b) { return {a.re / b, a.im / b}; }
    friend MpCx operator/(const MpCx& a, const MpCx& b) {
        MpReal d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }

    MpCx conj() const { return {re, -im}; }
    // |re| + |im|: cheap magnitude bound used for cancellation tracking.
    MpReal mag1() const { return abs(re) + abs(im); }

    friend MpCx exp(const MpCx& a) {
        MpReal m = exp(a.re);
        MpReal c(a.prec()), s(a.prec());
        mpfr_sin_cos(s.get(), c.get(), a.im.get(), MPFR_RNDN);
        return {m * c, m * s};
    }
    friend MpCx log(const MpCx& a) {
        // Principal branch; callers only use it under exp().
        return {log(a.re * a.re + a.im * a.im) * 0.5, atan2(a.im, a.re)};
    }
};

// log Gamma(x + i y) by lifted Stirling. Branch of the imaginary part is not
// normalized; use only under exp().
MpCx lgamma_complex(const MpReal& x, const MpReal& y, long prec_bits);

struct MpSeriesResult {
    MpCx value;               // J_{mu}(z), mu = delta + i*nu_signed
    MpReal abs_error;         // certified roundoff + truncation bound
    long terms = 0;
};

// Ascending series for J_{delta + i*nu_signed}(z), full working precision.
// Throws PrecisionExhausted if prec_bits cannot cover the cancellation.
MpSeriesResult series_j_mp(int delta, double nu_signed, double z, long prec_bits);

// Bits of cancellation the ascending series suffers at (nu, z), plus guard.
long series_required_bits(double nu, double z);

struct SeriesEval {
    std::complex<double> value;
    double abs_error;
};

// Double-rounded series results. `scaled` divides by cosh(pi*nu/2).
SeriesEval series_j(int delta, double nu_signed, double z, long prec_bits, bool scaled);
SeriesEval series_y(int delta, double nu_signed, double z, long prec_bits, bool scaled);

// High-order scaled asymptotic pair (Jt, Yt) evaluated in extended precision;
// truncation chosen automatically (first omitted term below 2^-prec or least
// term). Valid in the large-z regime only.
std::pair<double, double> asymptotic_jt_yt_mp(double nu, double z, long prec_bits);

// Extended-precision d1/d2: scaled J over sqrt(2/(pi z)) minus the phase-form
// approximation, both at prec_bits.
std::pair<double, double> diagnostic_mp(double nu, double z, long prec_bits);

}  // namespace kgc::detail
