#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace llmk {

/// Exact rational number. Always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses `p/q` or an integer. Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// `p/q`, or just `p` when the denominator is one.
std::string to_string(const Rational& r);

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

}  // namespace llmk
