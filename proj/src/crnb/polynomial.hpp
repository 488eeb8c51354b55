#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crnb/rational.hpp"

namespace crnb {

/// Product of variables with positive exponents, sorted by variable.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;  // (variable, exponent)

  Monomial() = default;  // the constant monomial 1
  static Monomial variable(std::uint32_t var, std::uint32_t exponent = 1);

  std::span<const Factor> factors() const { return factors_; }
  std::uint32_t exponent(std::uint32_t var) const;
  std::uint32_t degree() const;

  Monomial operator*(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Graded order: total degree first, then factors lexicographically.
  friend bool operator<(const Monomial& a, const Monomial& b);

 private:
  std::vector<Factor> factors_;
};

/// Sparse multivariate polynomial with exact rational coefficients. No zero
/// coefficient is ever stored, so structural equality is polynomial identity.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)

  static Polynomial variable(std::uint32_t var);
  static Polynomial term(const Rational& coefficient, Monomial monomial);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::uint32_t degree() const;
  /// Largest variable index plus one (0 for constants).
  std::uint32_t variable_bound() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& factor);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& k) { return a *= k; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  /// Replaces every variable v by replacement[v]. Variables at or beyond
  /// replacement.size() are kept unchanged.
  Polynomial substitute(std::span<const Polynomial> replacement) const;
  /// Replaces a single variable.
  Polynomial substitute(std::uint32_t var, const Polynomial& replacement) const;

  double evaluate(std::span<const double> values) const;

  /// Terms in graded order, e.g. "-6*A - 2*A*B" or "(1/2)*[C+E]^2". Names
  /// that are not plain identifiers are bracketed.
  std::string to_string(std::span<const std::string> names) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);

  std::map<Monomial, Rational> terms_;
};

/// Identifier as printed in polynomials: bare if [A-Za-z_][A-Za-z0-9_]*,
/// otherwise wrapped in brackets.
std::string format_variable(const std::string& name);

}  // namespace crnb
