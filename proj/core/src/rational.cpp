#include "nvaw/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace nvaw {

ExactScalar make_scalar(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("zero denominator");
  ExactScalar q(numerator, denominator);
  q.canonicalize();
  return q;
}

namespace {

bool is_integer_text(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

ExactScalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  const mpz_class n(strip_plus(num));
  const mpz_class d{std::string(den)};
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  ExactScalar q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const ExactScalar& value) { return value.get_str(); }

ExactScalar binomial(long n, long i) {
  if (i < 0) return 0;
  // Falling-factorial product n (n-1) ... (n-i+1) / i!, exact for negative n as well.
  mpz_class num = 1, den = 1;
  for (long j = 0; j < i; ++j) {
    num *= (n - j);
    den *= (j + 1);
  }
  ExactScalar q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace nvaw
