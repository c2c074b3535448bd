#include "adsp/rational.hpp"

#include <cctype>

#include "adsp/errors.hpp"

namespace adsp {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  require_input(is_integer_literal(num, true), "bad rational literal '" + std::string(text) + "'");
  Integer p(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  Integer q = 1;
  if (slash != std::string_view::npos) {
    const auto den = text.substr(slash + 1);
    require_input(is_integer_literal(den, true), "bad rational literal '" + std::string(text) + "'");
    q = Integer(std::string(den[0] == '+' ? den.substr(1) : den), 10);
    require_input(q != 0, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace adsp
