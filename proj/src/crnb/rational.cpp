#include "crnb/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace crnb {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long exponent) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed number '" + original + "'");
  };
  if (text.empty()) return fail();

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational value;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    mpz_class d(std::string(den), 10);
    if (d == 0) return fail();
    value = Rational(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = text.substr(0, e);
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) return fail();
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      int_part = mantissa.substr(0, dot);
      frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) return fail();
    if (!int_part.empty() && !all_digits(int_part)) return fail();
    if (!frac_part.empty() && !all_digits(frac_part)) return fail();

    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class num(digits, 10);
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0) {
      value = Rational(num * pow10(static_cast<unsigned long>(exponent)));
    } else {
      value = Rational(num, pow10(static_cast<unsigned long>(-exponent)));
      value.canonicalize();
    }
  }
  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rational& value) { return value.get_str(); }

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace crnb
