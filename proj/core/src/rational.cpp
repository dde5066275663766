#include "sphcover/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace sphcover {

std::string to_string(const Rat& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) {
    i = 1;
    if (s.size() == 1) return false;
  }
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  if (g != 1 && !(p == 0 && q == 1)) {
    throw std::invalid_argument("rational not in reduced form: '" + std::string(text) + "'");
  }
  Rat r;
  r.get_num() = p;
  r.get_den() = q;
  return r;
}

Rat rat_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double has no rational value");
  Rat r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

}  // namespace sphcover
