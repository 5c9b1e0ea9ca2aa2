#pragma once

#include <stdexcept>
#include <string>

namespace expertkm {

// Malformed inputs: bad observations, weights out of range, schema violations.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Well-formed inputs that hit a numerical wall: degenerate weights,
// nonconvergent quadrature, no optimizer bracket.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Guard threshold for inverse-probability denominators and kernel normalizers.
inline constexpr double eps_div = 1e-12;

}  // namespace expertkm
