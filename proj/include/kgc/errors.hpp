#pragma once

#include <stdexcept>
#include <string>

namespace kgc {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Series evaluation cannot certify the requested accuracy at the given
// working precision. Remedy: raise precision_bits.
struct PrecisionExhausted : Error {
    using Error::Error;
};

// Unscaled Bessel output requested but cosh(pi*nu/2) overflows a double.
// Remedy: use the scaled API.
struct OverflowWithoutScaling : Error {
    using Error::Error;
};

// Argument outside the physical domain (e.g. x outside the cavity).
struct DomainError : Error {
    using Error::Error;
};

// Inner-product operands sampled on different grids.
struct GridMismatch : Error {
    using Error::Error;
};

// Grid too coarse for the oscillations it must resolve.
struct ResolutionError : Error {
    using Error::Error;
};

// Invalid or unknown configuration key/value.
struct ConfigError : Error {
    using Error::Error;
};

// Operation requires the non-relativistic regime and the configuration
// violates it.
struct RegimeError : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    using Error::Error;
};

}  // namespace kgc
