#include "motzkin/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace motzkin {

namespace {

Integer pow10(unsigned long n) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, n);
  return result;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational parse_decimal(std::string_view text, std::string_view original) {
  auto fail = [&] {
    throw std::invalid_argument("not a rational number: '" + std::string(original) + "'");
  };
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) fail();
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) fail();
  if (!int_part.empty() && !all_digits(int_part)) fail();
  if (!frac_part.empty() && !all_digits(frac_part)) fail();

  std::string digits = std::string(int_part) + std::string(frac_part);
  Integer numerator(digits.empty() ? std::string("0") : digits, 10);
  Rational value(numerator, pow10(frac_part.size()));
  if (exponent > 0) value *= Rational(pow10(static_cast<unsigned long>(exponent)));
  if (exponent < 0) value /= Rational(pow10(static_cast<unsigned long>(-exponent)));
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
    trimmed.remove_prefix(1);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.remove_suffix(1);
  if (trimmed.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = trimmed.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trimmed.substr(0, slash), text);
    Rational den = parse_decimal(trimmed.substr(slash + 1), text);
    if (sgn(den) == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational value = num / den;
    value.canonicalize();
    return value;
  }
  return parse_decimal(trimmed, text);
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return mpq_get_d(value.get_mpq_t()); }

Rational pow(const Rational& base, unsigned long exponent) {
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  result.canonicalize();
  return result;
}

}  // namespace motzkin
