#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "birconj/loci.hpp"
#include "birconj/projmap.hpp"

namespace birconj {

/// 2x2 integer matrix; row i holds the exponents of the i-th component of a
/// monomial map (x, y) -> (x^a y^b, x^c y^d).
struct IntMat2 {
  std::array<std::array<long, 2>, 2> a{};

  static IntMat2 identity() { return {{{{1, 0}, {0, 1}}}}; }
  long det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
  /// Requires det = +-1.
  IntMat2 inverse() const;
  IntMat2 operator-() const;
  IntMat2 pow(int n) const;
  friend IntMat2 operator*(const IntMat2& x, const IntMat2& y);
  friend IntMat2 operator*(long s, const IntMat2& x);
  friend bool operator==(const IntMat2&, const IntMat2&) = default;
  std::string to_string() const;
};

/// Pointwise c^M: component i is prod_j c_j^{M_ij}.
std::array<FieldElem, 2> monomial_apply(const IntMat2& m, const std::array<FieldElem, 2>& c);

struct JonquieresData {
  FieldElem A, B;
  int m = 0;
  LaurentPoly C;

  /// (A x, B x^m y + C(x)) on the chart x != 0.
  AffinePlaneMap recompose() const;
};

/// Throws NotJonquieres.
JonquieresData jonquieres_decompose(const AffinePlaneMap& h);

struct MonomialData {
  FieldElem u, v;
  IntMat2 M;

  /// (u x^a y^b, v x^c y^d) on the torus.
  AffinePlaneMap recompose() const;
};

/// Throws NotMonomial, or NotInvertible when det M is not +-1.
MonomialData monomial_decompose(const AffinePlaneMap& h);

/// Element of the image of the coordinate permutations in GL_2(Z).
struct PermMatrix {
  std::array<int, 3> perm;  // [x0 : x1 : x2] -> [x_perm[0] : x_perm[1] : x_perm[2]]
  IntMat2 M;
  std::string label;
};

/// The six elements, identity first. Each matrix is read off from the torus
/// form of the permutation.
const std::vector<PermMatrix>& s3_elements();
/// The element with matrix m, if any.
std::optional<PermMatrix> s3_find(const IntMat2& m);

struct S3Solution {
  enum class Kind { Trivial, Witness, None } kind = Kind::None;
  std::optional<PermMatrix> P;
  int j = 0;
  int sign = 1;  // M = sign * A2^j * P
};

S3Solution s3_solve_conjugacy(const PermMatrix& a1, const PermMatrix& a2, const IntMat2& m);

/// M in PGL_3 mapping the configuration to the standard one of its tag:
/// P1 -> {z}, P2 -> {x, z}, P3 -> {x, y, z}. Sorted lines go to x, y, z in
/// order (x, z for P2).
PglElem standardize_config(const LineConfig& config);

/// Normalization h_n = A o h o B with f1_n = B^{-1} f1 B and
/// f2_n = A f2 A^{-1}. If h' conjugates f1_n to f2_n then A^{-1} h' B^{-1}
/// conjugates f1 to f2.
struct NormalizationRecord {
  PglElem A, B;
  EndoP2 f1n, f2n;
  BirMapP2 hn;
  LineConfig config;
  std::vector<std::string> warnings;

  PglElem undo(const PglElem& h_normalized) const { return A.inverse() * h_normalized * B.inverse(); }
};

/// Errors: NotConjugate, NotInClassification, TheoremViolation (a contracted
/// curve that is not a line, or mismatched configurations).
NormalizationRecord normalize_pair(const EndoP2& f1, const EndoP2& f2, const BirMapP2& h);

}  // namespace birconj
