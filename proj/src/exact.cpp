#include "oschar/exact.hpp"

#include <cctype>
#include <stdexcept>

namespace oschar {

ExactScalar rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  ExactScalar q(num, den);
  q.canonicalize();
  return q;
}

ExactInt pow(const ExactInt& base, unsigned long exp) {
  ExactInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

ExactScalar pow(const ExactScalar& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw std::domain_error("pow: zero to a negative power");
    return pow(ExactScalar(1 / base), -exp);
  }
  const auto e = static_cast<unsigned long>(exp);
  ExactScalar out(pow(base.get_num(), e), pow(base.get_den(), e));
  // Numerator and denominator of a reduced fraction stay coprime under powers.
  return out;
}

ExactInt binomial(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  ExactInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a),
               static_cast<unsigned long>(b));
  return out;
}

ExactInt factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  ExactInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

namespace {

ExactInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw std::invalid_argument("not a rational: '" + std::string(whole) + "'");
  }
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("not a rational: '" + std::string(whole) +
                                  "'");
    }
  }
  return ExactInt(std::string(digits), 10);
}

ExactScalar parse_decimal(std::string_view text, std::string_view whole) {
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    bool neg = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      neg = exp_part[0] == '-';
      exp_part.remove_prefix(1);
    }
    ExactInt magnitude = parse_integer(exp_part, whole);
    if (magnitude > 4000) {
      throw std::invalid_argument("exponent out of range: '" +
                                  std::string(whole) + "'");
    }
    exponent = magnitude.get_si() * (neg ? -1 : 1);
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string_view intpart = text.substr(0, dot);
    if (intpart.empty() && frac.empty()) parse_integer("", whole);
    digits = std::string(intpart) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  } else {
    digits = std::string(text);
  }
  ExactScalar value(parse_integer(digits, whole));
  return value * pow(ExactScalar(10), exponent);
}

}  // namespace

ExactScalar parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  ExactScalar value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    ExactInt num = parse_integer(text.substr(0, slash), whole);
    ExactInt den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) {
      throw std::invalid_argument("zero denominator: '" + std::string(whole) +
                                  "'");
    }
    value = ExactScalar(num, den);
    value.canonicalize();
  } else {
    value = parse_decimal(text, whole);
  }
  return negative ? ExactScalar(-value) : value;
}

std::string to_fraction_string(const ExactScalar& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const ExactScalar& value) { return mpq_get_d(value.get_mpq_t()); }

}  // namespace oschar
