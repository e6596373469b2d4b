#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <string_view>
#include <thread>
#include <vector>

// Small numeric utilities shared across modules: compensated (double-double)
// arithmetic for phase-critical paths, deterministic pairwise summation,
// sin/cos of pi*x with exact zeros at integers.

namespace kgc {

// ---------------------------------------------------------------------------
// Double-double arithmetic. Value represented as hi + lo with |lo| <= ulp(hi)/2.
// Only the operations the phase pipeline needs. Requires IEEE double and FMA.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    constexpr dd(double h, double l) : hi(h), lo(l) {}
    explicit constexpr dd(double x) : hi(x), lo(0.0) {}

    double to_double() const { return hi + lo; }
};

namespace ddops {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(const dd& a, const dd& b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return quick_two_sum(s.hi, lo);
}

inline dd add(const dd& a, double b) { return add(a, dd(b)); }

inline dd sub(const dd& a, const dd& b) { return add(a, dd{-b.hi, -b.lo}); }

inline dd mul(const dd& a, const dd& b) {
    dd p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, lo);
}

inline dd mul(const dd& a, double b) { return mul(a, dd(b)); }

inline dd div(const dd& a, const dd& b) {
    double q1 = a.hi / b.hi;
    dd r = sub(a, mul(b, q1));
    double q2 = r.hi / b.hi;
    r = sub(r, mul(b, q2));
    double q3 = r.hi / b.hi;
    dd q = quick_two_sum(q1, q2);
    return add(q, q3);
}

inline dd sqrt(const dd& a) {
    // One Newton step on top of the double sqrt.
    double x = std::sqrt(a.hi);
    if (x == 0.0) return dd(0.0);
    dd x2 = two_prod(x, x);
    dd diff = sub(a, x2);
    double corr = diff.hi / (2.0 * x);
    return quick_two_sum(x, corr);
}

// 2*pi to double-double precision.
inline constexpr dd two_pi() { return {6.283185307179586477e+00, 2.4492935982947063545e-16}; }
inline constexpr dd pi() { return {3.141592653589793116e+00, 1.2246467991473531772e-16}; }

}  // namespace ddops

// Reduce a (possibly huge) double-double phase into [-pi, pi] without the
// representation loss a plain fmod on the rounded double would incur.
inline double reduce_phase(const dd& phase) {
    using namespace ddops;
    double n = std::round(phase.to_double() / two_pi().to_double());
    dd r = sub(phase, mul(two_pi(), n));
    double x = r.to_double();
    // n was computed from the rounded quotient; one correction pass suffices.
    if (x > 3.1415926535897932) x = sub(r, two_pi()).to_double();
    if (x < -3.1415926535897932) x = add(r, two_pi()).to_double();
    return x;
}

// ---------------------------------------------------------------------------
// sin(pi*v), cos(pi*v) with exact zeros/extrema at integer and half-integer v.
// The reduction v -> v mod 2 is exact for |v| < 2^52.
inline double sinpi(double v) {
    double r = std::remainder(v, 2.0);  // r in [-1, 1]
    double a = std::abs(r);
    double s;
    if (a <= 0.25)
        s = std::sin(3.141592653589793116 * a + 1.2246467991473531772e-16 * a);
    else if (a <= 0.75)
        s = std::cos(3.141592653589793116 * (a - 0.5) + 1.2246467991473531772e-16 * (a - 0.5));
    else
        s = std::sin(3.141592653589793116 * (1.0 - a) + 1.2246467991473531772e-16 * (1.0 - a));
    return r < 0 ? -s : s;
}

inline double cospi(double v) {
    double r = std::abs(std::remainder(v, 2.0));  // [0, 1]
    if (r <= 0.25) return std::cos(3.141592653589793116 * r + 1.2246467991473531772e-16 * r);
    if (r < 0.75) return std::sin(3.141592653589793116 * (0.5 - r) + 1.2246467991473531772e-16 * (0.5 - r));
    return -std::cos(3.141592653589793116 * (1.0 - r) + 1.2246467991473531772e-16 * (1.0 - r));
}

// ---------------------------------------------------------------------------
// Deterministic pairwise summation: same result regardless of worker count.
template <typename T>
T pairwise_sum(const T* data, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s = data[0];
        for (std::size_t i = 1; i < n; ++i) s += data[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

template <typename T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

// ---------------------------------------------------------------------------
// Parallel map over [0, n). Writes into caller-owned storage; no reductions,
// so results are identical for any worker count. The first exception thrown
// by the body is rethrown on the calling thread.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                         unsigned workers = 0) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || n < 256) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::mutex error_mutex;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, &error, &error_mutex, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

// FNV-1a, used to stamp output tables with a configuration hash.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace kgc
