#include "crnb/polynomial.hpp"

#include <algorithm>
#include <cctype>

namespace crnb {

Monomial Monomial::variable(std::uint32_t var, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) m.factors_.push_back({var, exponent});
  return m;
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
  for (const auto& [v, e] : factors_)
    if (v == var) return e;
  return 0;
}

std::uint32_t Monomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.push_back({a->first, a->second + b->second});
      ++a;
      ++b;
    }
  }
  return out;
}

bool operator<(const Monomial& a, const Monomial& b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) return da < db;
  return a.factors_ < b.factors_;
}

Polynomial::Polynomial(const Rational& constant) { add_term(Monomial{}, constant); }

Polynomial Polynomial::variable(std::uint32_t var) { return term(Rational(1), Monomial::variable(var)); }

Polynomial Polynomial::term(const Rational& coefficient, Monomial monomial) {
  Polynomial p;
  p.add_term(monomial, coefficient);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::uint32_t Polynomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

std::uint32_t Polynomial::variable_bound() const {
  std::uint32_t bound = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m.factors()) bound = std::max(bound, v + 1);
  return bound;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& factor) {
  if (factor == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= factor;
  }
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial Polynomial::substitute(std::span<const Polynomial> replacement) const {
  // Powers of each replaced variable, computed on demand.
  std::map<std::pair<std::uint32_t, std::uint32_t>, Polynomial> powers;
  auto power = [&](std::uint32_t var, std::uint32_t exponent) -> const Polynomial& {
    auto key = std::pair{var, exponent};
    if (auto it = powers.find(key); it != powers.end()) return it->second;
    Polynomial p(Rational(1));
    for (std::uint32_t i = 0; i < exponent; ++i) p = p * replacement[var];
    return powers.emplace(key, std::move(p)).first->second;
  };

  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial product(c);
    Monomial kept;
    for (const auto& [v, e] : m.factors()) {
      if (v < replacement.size()) {
        product = product * power(v, e);
      } else {
        kept = kept * Monomial::variable(v, e);
      }
    }
    if (!kept.factors().empty()) product = product * term(Rational(1), kept);
    out += product;
  }
  return out;
}

Polynomial Polynomial::substitute(std::uint32_t var, const Polynomial& replacement) const {
  std::vector<Polynomial> table(var + 1);
  for (std::uint32_t v = 0; v < var; ++v) table[v] = variable(v);
  table[var] = replacement;
  return substitute(table);
}

double Polynomial::evaluate(std::span<const double> values) const {
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (const auto& [v, e] : m.factors())
      for (std::uint32_t i = 0; i < e; ++i) t *= values[v];
    sum += t;
  }
  return sum;
}

std::string format_variable(const std::string& name) {
  bool plain = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
  for (char c : name)
    plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  return plain ? name : "[" + name + "]";
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  auto var_name = [&](std::uint32_t v) {
    return v < names.size() ? format_variable(names[v]) : "x" + std::to_string(v);
  };
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;

    std::string factors;
    for (const auto& [v, e] : m.factors()) {
      if (!factors.empty()) factors += '*';
      factors += var_name(v);
      if (e > 1) factors += "^" + std::to_string(e);
    }
    std::string coefficient = magnitude.get_den() == 1 ? magnitude.get_str()
                                                        : "(" + magnitude.get_str() + ")";
    if (factors.empty()) {
      out += coefficient;
    } else if (magnitude == 1) {
      out += factors;
    } else {
      out += coefficient + "*" + factors;
    }
  }
  return out;
}

}  // namespace crnb
