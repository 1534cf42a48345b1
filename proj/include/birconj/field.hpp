#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace birconj {

namespace detail {
struct FieldData;
}

class FieldElem;

/// Handle to an interned coefficient field: the rationals, or an explicit
/// quotient F_p[t]/(m(t)). Handles are cheap to copy and compare by identity;
/// the underlying tables live for the whole program.
class Field {
public:
  Field();  // the rationals

  static Field rationals();
  /// F_{p^s} with the smallest monic irreducible modulus of degree s
  /// (coefficients read as the base-p integer c_0 + c_1 p + ...).
  static Field finite(std::uint32_t p, unsigned s = 1);
  /// F_{p^s} with an explicit monic modulus, coefficients low to high.
  static Field finite(std::uint32_t p, const std::vector<std::uint32_t>& modulus);
  /// Accepts `Q`, `F9`, `F9/t^2+1`.
  static Field parse(std::string_view spec);

  bool is_rational() const;
  bool is_finite() const { return !is_rational(); }
  std::uint32_t characteristic() const;
  unsigned extension_degree() const;
  /// Number of elements; 0 for the rationals.
  std::uint32_t order() const;
  const std::vector<std::uint32_t>& modulus() const;
  std::string spec() const;

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem from_int(long v) const;
  FieldElem from_mpz(const mpz_class& v) const;
  /// Throws NotRepresentable when the denominator vanishes in the field.
  FieldElem from_rational(const mpq_class& v) const;
  FieldElem from_index(std::uint32_t index) const;
  /// The class of t in F_p[t]/(m).
  FieldElem generator() const;
  FieldElem primitive_element() const;
  /// All elements ordered by index. Finite fields only.
  std::vector<FieldElem> elements() const;

  const detail::FieldData* data() const { return d_; }

  friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }

private:
  friend class FieldElem;
  explicit Field(const detail::FieldData* d) : d_(d) {}
  const detail::FieldData* d_;
};

/// Exact element of a Field. Rationals are canonical reduced fractions;
/// finite-field elements are residues of degree < s stored as their base-p
/// index. Mixing fields in one operation throws FieldMismatch.
class FieldElem {
public:
  FieldElem();  // rational zero
  FieldElem(Field f, long v);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  std::uint32_t index() const;          // finite fields only
  const mpq_class& rational() const;    // rationals only

  FieldElem operator-() const;
  FieldElem& operator+=(const FieldElem& o);
  FieldElem& operator-=(const FieldElem& o);
  FieldElem& operator*=(const FieldElem& o);
  FieldElem& operator/=(const FieldElem& o);

  friend FieldElem operator+(FieldElem a, const FieldElem& b) { return a += b; }
  friend FieldElem operator-(FieldElem a, const FieldElem& b) { return a -= b; }
  friend FieldElem operator*(FieldElem a, const FieldElem& b) { return a *= b; }
  friend FieldElem operator/(FieldElem a, const FieldElem& b) { return a /= b; }

  FieldElem inverse() const;
  FieldElem pow(long long e) const;

  /// Total order used for canonical sorting: numeric on Q, by index on F_q.
  friend std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b);
  friend bool operator==(const FieldElem& a, const FieldElem& b);

  /// Grammar-compatible rendering: `-3/2`, `2`, `(t+1)`.
  std::string to_string() const;
  /// True when the rendering needs no parentheses as a factor (prime-field
  /// residue or integer/fraction).
  bool is_simple() const;

private:
  friend class Field;
  FieldElem(const detail::FieldData* f, std::uint32_t r) : f_(f), v_(r) {}
  FieldElem(const detail::FieldData* f, mpq_class q) : f_(f), v_(std::move(q)) {}
  void check_same(const FieldElem& o) const;

  const detail::FieldData* f_;
  std::variant<std::uint32_t, mpq_class> v_;
};

/// All x in the field with x^n = a, sorted. Exhaustive over finite fields;
/// exact integer roots of numerator and denominator over Q.
std::vector<FieldElem> nth_roots(const FieldElem& a, unsigned n);

/// Smallest n in [1, bound] with u^n = 1, or 0 if none.
unsigned multiplicative_order(const FieldElem& u, unsigned bound = 1u << 20);

/// Image of e under the fixed embedding F_{p^s} -> F_{p^{sk}} that sends t to
/// the smallest-index root of the source modulus. Throws NoEmbedding.
FieldElem embed(const FieldElem& e, Field target);

/// True iff `from` embeds into `to` (same characteristic, degree divides).
bool embeds_into(Field from, Field to);

}  // namespace birconj
