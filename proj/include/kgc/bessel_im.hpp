#pragma once

// Error-controlled evaluation of Bessel functions of purely imaginary order
// J_{+-i nu}(z), Y_{+-i nu}(z) for real nu >= 0 and z > 0, their scaled real
// forms Jt, Yt, z-derivatives, and precision diagnostics.
//
// Two evaluation paths:
//  - large-argument asymptotic expansion (valid for nu^2/z small), error
//    estimated by the first omitted term;
//  - extended-precision ascending series (moderate z), error from a tracked
//    cancellation bound.
// Quantities scale like cosh(pi nu/2); physics-facing callers use the scaled
// combination J_{i nu}/cosh(pi nu/2), which stays O(1/sqrt(z)).

#include <complex>
#include <utility>

#include "kgc/numerics.hpp"

namespace kgc::bessel {

enum class BranchSign { positive, negative };

struct Order {
    double nu = 0.0;
    BranchSign sign = BranchSign::positive;

    Order(double nu_, BranchSign sign_);
    double signed_nu() const { return sign == BranchSign::positive ? nu : -nu; }
};

enum class EvalMethod { series, asymptotic };

struct EvalResult {
    std::complex<double> value;
    double abs_error = 0.0;
    EvalMethod method = EvalMethod::asymptotic;
    bool scaled = false;  // true: value is J_{i nu}(z) / cosh(pi nu / 2)
};

struct AsymptoticPolicy {
    int max_terms = 2;               // truncation order of the expansions
    double regime_threshold = 1e-2;  // asymptotic path requires nu^2/z below this
    int precision_bits = 256;        // working precision of the series path
    double accuracy_target = 1e-7;   // absolute target for scaled quantities
};

enum class Scaling { automatic, unscaled, scaled };

// A_s(i nu): real for purely imaginary order. A_0 = 1.
double coefficient_a(int s, const Order& nu);

// Ascending-series evaluation of J_{i nu} (unscaled).
EvalResult series_j_imag(const Order& nu, double z, int precision_bits);

// Scaled real pair (Jt_nu, Yt_nu) = sech(pi nu/2) (Re J_{i nu}, Re Y_{i nu}).
std::pair<EvalResult, EvalResult> scaled_jt_yt(const Order& nu, double z,
                                               const AsymptoticPolicy& policy);

EvalResult j_imag(const Order& nu, double z, const AsymptoticPolicy& policy,
                  Scaling scaling = Scaling::automatic);
EvalResult y_imag(const Order& nu, double z, const AsymptoticPolicy& policy,
                  Scaling scaling = Scaling::automatic);

// d/dz J_{sign i nu}(z) = (J_{sign i nu - 1} - J_{sign i nu + 1})/2, same
// scaling discipline as j_imag.
EvalResult dj_dz(const Order& nu, double z, const AsymptoticPolicy& policy,
                 Scaling scaling = Scaling::automatic);

// (d1, d2): real and imaginary part of J_{i nu}(z)/(cosh(pi nu/2) sqrt(2/(pi z)))
// minus e^{i(z - (4 nu^2+1)/(8z) - pi/4)}. `extended` selects the arithmetic of
// both the reference and the approximation.
std::pair<double, double> precision_diagnostic(const Order& nu, double z,
                                               const AsymptoticPolicy& policy, bool extended);

// Joint scaled value and z-derivative for J_{sign i nu}; the hot path of the
// cavity wavefunction evaluator. Phase carried in double-double.
struct ScaledPair {
    std::complex<double> j;
    std::complex<double> djdz;
    double abs_error = 0.0;
    EvalMethod method = EvalMethod::asymptotic;
};
ScaledPair scaled_j_pair(const Order& nu, const dd& z, const AsymptoticPolicy& policy);

// True when (nu, z) qualifies for the asymptotic path under `policy`.
bool asymptotic_ok(double nu, double z, const AsymptoticPolicy& policy);

}  // namespace kgc::bessel
