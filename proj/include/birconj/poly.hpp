#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "birconj/field.hpp"

namespace birconj {

/// Exponent vector over (x, y, z).
using Exponent = std::array<int, 3>;

inline constexpr int kX = 0;
inline constexpr int kY = 1;
inline constexpr int kZ = 2;

/// Graded lexicographic order with x > y > z, largest first.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const {
    int da = a[0] + a[1] + a[2], db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    return a > b;
  }
};

/// Sparse polynomial in x, y, z over a Field. Zero coefficients are never
/// stored; iteration runs from the grlex-leading term down.
class MultiPoly {
public:
  using Terms = std::map<Exponent, FieldElem, GrlexGreater>;

  explicit MultiPoly(Field f = Field::rationals()) : field_(f) {}

  static MultiPoly constant(const FieldElem& c);
  static MultiPoly constant(Field f, long c) { return constant(f.from_int(c)); }
  static MultiPoly variable(Field f, int var);
  static MultiPoly monomial(const FieldElem& c, const Exponent& e);

  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(int var) const;
  /// Lowest total degree among the terms; -1 for zero.
  int min_degree() const;
  bool is_homogeneous() const;
  bool uses(int var) const { return degree_in(var) > 0; }

  FieldElem coeff(const Exponent& e) const;
  /// Constant term value.
  FieldElem constant_term() const { return coeff({0, 0, 0}); }
  const Exponent& leading_exponent() const;
  const FieldElem& leading_coeff() const;

  void add_term(const Exponent& e, const FieldElem& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const FieldElem& c, const MultiPoly& a) { return a.scaled(c); }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly scaled(const FieldElem& c) const;
  MultiPoly shifted(const Exponent& e) const;  // multiply by x^e
  MultiPoly pow(unsigned n) const;
  /// Leading coefficient scaled to 1 (zero stays zero).
  MultiPoly monic() const;
  MultiPoly derivative(int var) const;

  FieldElem evaluate(std::span<const FieldElem> point) const;
  /// Replace each variable by the matching image (exact composition).
  MultiPoly substitute(std::span<const MultiPoly> images) const;
  /// Set one variable to a field value.
  MultiPoly specialize(int var, const FieldElem& value) const;
  /// Coefficients as a polynomial in `var`; entry k multiplies var^k.
  std::vector<MultiPoly> coefficients_in(int var) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& coeffs, int var, Field f);
  /// Every term padded with powers of `var` up to total degree `degree`.
  MultiPoly homogenize(int var, int degree) const;
  /// Same polynomial with coefficients mapped into a larger field.
  MultiPoly embedded(Field target) const;

  std::string to_string() const;

private:
  Field field_;
  Terms terms_;
};

/// Multivariate division by a single divisor under grlex: f = q*g + r with no
/// term of r divisible by the leading monomial of g. The remainder is the
/// canonical normal form of f modulo the principal ideal (g).
std::pair<MultiPoly, MultiPoly> divmod(const MultiPoly& f, const MultiPoly& g);

/// f / g when g divides f exactly.
std::optional<MultiPoly> exact_quotient(const MultiPoly& f, const MultiPoly& g);

inline bool divides(const MultiPoly& g, const MultiPoly& f) { return exact_quotient(f, g).has_value(); }

/// Univariate Laurent polynomial with integer exponents.
class LaurentPoly {
public:
  using Terms = std::map<int, FieldElem>;

  explicit LaurentPoly(Field f = Field::rationals()) : field_(f) {}
  static LaurentPoly monomial(const FieldElem& c, int e);

  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(int e, const FieldElem& c);
  FieldElem coeff(int e) const;
  int min_exponent() const;
  int max_exponent() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

  LaurentPoly scaled(const FieldElem& c) const;
  LaurentPoly shifted(int k) const;
  /// p(a*x).
  LaurentPoly rescaled_variable(const FieldElem& a) const;
  /// p(x^k) for k != 0.
  LaurentPoly composed_power(int k) const;
  bool is_polynomial() const { return is_zero() || min_exponent() >= 0; }
  /// Polynomial in x (as a MultiPoly in `var`); requires is_polynomial().
  MultiPoly to_poly(int var = kX) const;
  static LaurentPoly from_poly(const MultiPoly& p, int var = kX);

  std::string to_string() const;

private:
  Field field_;
  Terms terms_;
};

/// Laurent polynomial in x and y (the z slot of the exponent is always 0).
/// Represents regular functions on the charts x != 0 and xy != 0.
class Laurent2 {
public:
  using Terms = std::map<Exponent, FieldElem, GrlexGreater>;

  explicit Laurent2(Field f = Field::rationals()) : field_(f) {}
  static Laurent2 monomial(const FieldElem& c, int i, int j);
  static Laurent2 constant(const FieldElem& c) { return monomial(c, 0, 0); }
  /// Requires a polynomial in x, y only.
  static Laurent2 from_poly(const MultiPoly& p);

  Field field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  void add_term(int i, int j, const FieldElem& c);
  FieldElem coeff(int i, int j) const;
  /// Smallest and largest exponent of x (var 0) or y (var 1); zero for 0.
  int min_exp(int var) const;
  int max_exp(int var) const;
  bool is_polynomial() const { return is_zero() || (min_exp(0) >= 0 && min_exp(1) >= 0); }

  Laurent2& operator+=(const Laurent2& o);
  Laurent2& operator-=(const Laurent2& o);
  friend Laurent2 operator+(Laurent2 a, const Laurent2& b) { return a += b; }
  friend Laurent2 operator-(Laurent2 a, const Laurent2& b) { return a -= b; }
  friend Laurent2 operator*(const Laurent2& a, const Laurent2& b);
  friend bool operator==(const Laurent2& a, const Laurent2& b);

  Laurent2 scaled(const FieldElem& c) const;
  /// Negative powers are defined for monomials only (NotInvertible otherwise).
  Laurent2 pow(int n) const;
  Laurent2 substitute(const Laurent2& x_image, const Laurent2& y_image) const;
  MultiPoly to_poly() const;

  std::string to_string() const;

private:
  Field field_;
  Terms terms_;
};

}  // namespace birconj
