#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace crnb {

// Exact rational arithmetic for rates and initial concentrations.
using Rational = mpq_class;

/// Parses an integer ("6"), fraction ("1/10"), decimal ("0.25") or
/// scientific ("2.5e-3") literal exactly, without a floating-point
/// intermediate. Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical text: "6", "-3", "1/10".
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace crnb
