#include "downup/rational.h"

#include <stdexcept>

namespace downup {

namespace {

auto is_integer_text(std::string_view s, bool allow_sign) -> bool {
  if (s.empty()) { return false; }
  if (allow_sign && s.front() == '-') { s.remove_prefix(1); }
  if (s.empty()) { return false; }
  for (auto c : s) {
    if (c < '0' || c > '9') { return false; }
  }
  return true;
}

}  // namespace

auto parse_rational(std::string_view text) -> Rational {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    throw std::invalid_argument("expected a rational of the form p/q, got '" + std::string{text} + "'");
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!is_integer_text(num, true) || !is_integer_text(den, false)) {
    throw std::invalid_argument("expected a rational of the form p/q, got '" + std::string{text} + "'");
  }
  auto q = mpz_class{std::string{den}};
  if (q == 0) { throw std::invalid_argument("zero denominator in '" + std::string{text} + "'"); }
  auto r = Rational{mpz_class{std::string{num}}, q};
  r.canonicalize();
  return r;
}

auto to_string(const Rational& r) -> std::string { return r.get_str(); }

auto to_double(const Rational& r) -> double { return r.get_d(); }

void require_unit_interval(const Rational& alpha, bool open, const char* context) {
  auto ok = open ? (alpha > 0 && alpha < 1) : (alpha >= 0 && alpha <= 1);
  if (!ok) {
    throw std::invalid_argument(std::string{context} + ": alpha = " + to_string(alpha) + " must lie in " +
                                (open ? "(0, 1)" : "[0, 1]"));
  }
}

auto ratio(long num, long den) -> Rational {
  if (den == 0) { throw std::invalid_argument("ratio: zero denominator"); }
  auto r = Rational{num, den};
  r.canonicalize();
  return r;
}

}  // namespace downup
