#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sphcover {

/// Exact rational scalar. GMP keeps values canonical (gcd(|p|, q) = 1, q > 0)
/// as long as every value is produced by arithmetic or by parse_rat().
using Rat = mpq_class;

/// Canonical "p/q" form; integers are written with an explicit "/1".
std::string to_string(const Rat& value);

/// Parses "p/q" or "p". Rejects zero/negative denominators and non-reduced
/// fractions such as "2/4".
Rat parse_rat(std::string_view text);

inline int sign(const Rat& value) { return sgn(value); }

/// Exact value of a finite binary64.
Rat rat_from_double(double value);

}  // namespace sphcover
