#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "birconj/field.hpp"
#include "birconj/poly.hpp"
#include "birconj/polyalg.hpp"

namespace birconj {

/// Homogeneous lift [F0 : F1 : F2] of a rational self-map of P^2.
using Triple = std::array<MultiPoly, 3>;

/// Throws NotHomogeneous / DegreeMismatch / ZeroTriple; returns the degree.
int check_triple(const Triple& t);
/// Divide by the gcd of the components and scale so that the leading
/// coefficient of the first nonzero component is 1. Equal rational maps
/// have equal reduced triples.
Triple reduce_triple(const Triple& t);
/// g o f, reduced.
Triple compose(const Triple& g, const Triple& f);
/// All 2x2 cross products vanish.
bool proportional(const Triple& a, const Triple& b);
Triple identity_triple(Field f);
Triple embedded(const Triple& t, Field target);
std::string format_triple(const Triple& t);

/// 3x3 invertible matrix modulo scalars acting on column vectors of
/// homogeneous coordinates. The stored representative has its first
/// nonzero entry (row-major) equal to 1.
class PglElem {
public:
  using Matrix = std::array<Vec3, 3>;

  explicit PglElem(const Matrix& m);  // throws NotInvertible
  static PglElem identity(Field f);
  static PglElem diagonal(const FieldElem& a, const FieldElem& b, const FieldElem& c);
  /// The map [x0 : x1 : x2] -> [x_perm[0] : x_perm[1] : x_perm[2]].
  static PglElem permutation(Field f, const std::array<int, 3>& perm);
  /// Throws InvalidArgument unless every component is a linear form.
  static PglElem from_triple(const Triple& t);

  const Matrix& matrix() const { return m_; }
  Field field() const { return m_[0][0].field(); }
  FieldElem det() const;
  PglElem inverse() const;
  /// Composition a o b.
  friend PglElem operator*(const PglElem& a, const PglElem& b);
  friend bool operator==(const PglElem& a, const PglElem& b) { return a.m_ == b.m_; }

  Vec3 apply_point(const Vec3& p) const;
  /// Image of the line {l . v = 0}: the line l M^{-1}, normalized.
  Vec3 apply_line(const Vec3& l) const;
  Triple triple() const;
  PglElem embedded(Field target) const;
  bool is_identity() const;
  std::string to_string() const;

private:
  Matrix m_;
};

/// Validated dominant regular endomorphism of P^2.
class EndoP2 {
public:
  /// Errors: NotHomogeneous, DegreeMismatch, CommonFactor, NotDominant,
  /// NotRegular. When the Jacobian vanishes identically (possible in positive
  /// characteristic) dominance follows from the absence of common zeros.
  static EndoP2 make(const Triple& t);
  static EndoP2 make(const MultiPoly& f0, const MultiPoly& f1, const MultiPoly& f2) { return make(Triple{f0, f1, f2}); }

  const Triple& components() const { return t_; }
  int degree() const { return d_; }
  long topological_degree() const { return long(d_) * d_; }
  Field field() const { return t_[0].field(); }
  /// Same map over a larger field; validity is preserved by field extension.
  EndoP2 embedded(Field target) const;
  std::string to_string() const { return format_triple(t_); }

private:
  EndoP2(Triple t, int d) : t_(std::move(t)), d_(d) {}
  Triple t_;
  int d_;
};

/// Birational self-map with an optional known inverse.
class BirMapP2 {
public:
  /// Validates the forward triple (homogeneous, gcd 1) and, when present,
  /// that the inverse composes to the identity on both sides.
  static BirMapP2 make(const Triple& forward, std::optional<Triple> inverse = std::nullopt);
  static BirMapP2 from_pgl(const PglElem& a);
  static BirMapP2 identity(Field f) { return from_pgl(PglElem::identity(f)); }

  const Triple& forward() const { return fwd_; }
  const std::optional<Triple>& inverse_triple() const { return inv_; }
  int degree() const { return fwd_[0].is_zero() ? (fwd_[1].is_zero() ? fwd_[2].total_degree() : fwd_[1].total_degree()) : fwd_[0].total_degree(); }
  Field field() const { return fwd_[0].field(); }

  /// The stored inverse, or one synthesized for linear, monomial and
  /// Jonquieres maps. Throws InverseRequired otherwise.
  BirMapP2 inverse() const;
  /// Copy carrying an inverse (synthesized when missing).
  BirMapP2 with_inverse() const;
  std::optional<PglElem> as_pgl() const;
  BirMapP2 embedded(Field target) const;
  std::string to_string() const { return format_triple(fwd_); }

private:
  BirMapP2(Triple f, std::optional<Triple> i) : fwd_(std::move(f)), inv_(std::move(i)) {}
  Triple fwd_;
  std::optional<Triple> inv_;
};

/// Inverse of a linear, monomial or Jonquieres triple, if it is one.
std::optional<Triple> synthesize_inverse(const Triple& t);

enum class Chart { A2, XNonzero, Torus };
std::string_view chart_name(Chart c);

/// A map written in affine coordinates (x, y) = [x : y : 1] on an open chart:
/// the plane, {x != 0} or the torus {xy != 0}.
class AffinePlaneMap {
public:
  /// Throws NotRegularOnChart when a component has a pole on the chart.
  AffinePlaneMap(Chart chart, Laurent2 p, Laurent2 q);
  /// Dehomogenize at z = 1; throws NotRegularOnChart.
  static AffinePlaneMap from_triple(const Triple& t, Chart chart);

  Chart chart() const { return chart_; }
  const Laurent2& first() const { return p_; }
  const Laurent2& second() const { return q_; }
  Field field() const { return p_.field(); }
  /// Clear denominators by the smallest monomial in x, y, z.
  Triple to_triple() const;
  /// this o f.
  AffinePlaneMap compose(const AffinePlaneMap& f) const;
  friend bool operator==(const AffinePlaneMap& a, const AffinePlaneMap& b) {
    return a.p_ == b.p_ && a.q_ == b.q_;
  }
  std::string to_string() const;

private:
  Chart chart_;
  Laurent2 p_, q_;
};

/// `[P0 : P1 : P2]` or `(P, Q) on chart <a2|xne0|torus>`; the chart suffix
/// defaults to a2.
std::variant<Triple, AffinePlaneMap> parse_map(std::string_view text, Field field);
/// parse_map followed by conversion of affine literals to triples.
Triple parse_triple(std::string_view text, Field field);

/// h o f1 and f2 o h are the same rational map.
bool verify_conjugacy(const Triple& h, const Triple& f1, const Triple& f2);
bool verify_conjugacy(const BirMapP2& h, const EndoP2& f1, const EndoP2& f2);
bool verify_conjugacy(const PglElem& h, const EndoP2& f1, const EndoP2& f2);

enum class Side { Left, Right, Conjugate };
/// Left: A o f. Right: f o A. Conjugate: A^{-1} o f o A.
EndoP2 act_pgl(const PglElem& a, const EndoP2& f, Side side);
BirMapP2 act_pgl(const PglElem& a, const BirMapP2& h, Side side);

/// The field F_{p^{sk}} containing f, or f itself when k = 1. Over Q only
/// k = 1 is allowed.
Field extension_of(Field f, unsigned k);

struct PointSet {
  std::vector<Vec3> points;  // normalized, sorted
  bool complete = true;
  Field field;
};

/// Common zeros of the reduced triple. Over a finite field: every point of
/// P^2(F_{q^k}) is tested. Over Q: resultant elimination and rational roots;
/// `complete` is false when the eliminant keeps irrational roots.
PointSet indeterminacy_points(const BirMapP2& h, unsigned k = 1);
PointSet common_zeros(const Triple& t, unsigned k = 1);

}  // namespace birconj
