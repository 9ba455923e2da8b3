#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qhd {

using Rational = mpq_class;

// Accepts "p", "-p", "p/q" with decimal digits; the result is canonical.
Rational parse_rational(std::string_view text);

// Canonical lowest-terms form, "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace qhd
