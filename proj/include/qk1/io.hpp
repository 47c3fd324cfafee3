#pragma once

#include <cstdint>
#include <string>

#include "qk1/rational_function.hpp"
#include "qk1/series.hpp"

namespace qk1 {

// Canonical text forms.  Bit-exact: two equal values serialize identically.
// Variables are named q, q1..qn by index; coefficients are "a/b" in lowest
// terms with the denominator omitted when 1; denominator factors are
// parenthesized with "^e" exponents.
std::string to_string(const Rational& x);
std::string to_string(const Polynomial& p);
std::string to_string(const RationalFunction& f);
std::string to_string(const TruncatedSeries& s);

std::string variable_name(int index);

// Inverses of the canonical forms (tolerant of extra whitespace).  The arity
// is context the text does not carry.  Throw input_error on malformed text.
Polynomial parse_polynomial(const std::string& text, int arity);
RationalFunction parse_rational_function(const std::string& text, int arity);
TruncatedSeries parse_series(const std::string& text);

// FNV-1a 64-bit, used for cache record checksums.
uint64_t fnv1a64(const std::string& data);

}  // namespace qk1
