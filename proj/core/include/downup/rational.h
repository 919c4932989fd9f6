#ifndef DOWNUP_RATIONAL_H_
#define DOWNUP_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace downup {

using Rational = mpq_class;

// Parses "p/q" (q > 0) into a canonical rational. Throws std::invalid_argument.
auto parse_rational(std::string_view text) -> Rational;
// "p/q", or "p" when the denominator is 1.
auto to_string(const Rational& r) -> std::string;
auto to_double(const Rational& r) -> double;
// num / den in lowest terms; den must be nonzero.
auto ratio(long num, long den) -> Rational;

// Checks that alpha lies in [0, 1] (or (0, 1) when open is set).
void require_unit_interval(const Rational& alpha, bool open, const char* context);

}  // namespace downup

#endif  // DOWNUP_RATIONAL_H_
