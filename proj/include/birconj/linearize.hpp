#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "birconj/normform.hpp"

namespace birconj {

/// Valuation v(F) = -max{s i + t j : a_ij != 0} where F = sum a_ij P^i Q^j.
/// (P, Q) is a polynomial automorphism of the plane with stored inverse.
struct MonomialValuation {
  mpq_class s, t;
  MultiPoly P, Q;        // in x, y
  MultiPoly Pinv, Qinv;  // (Pinv, Qinv) o (P, Q) = id

  /// Throws InvalidArgument for negative weights and InvalidInverse when the
  /// inverse does not compose to the identity on both sides.
  static MonomialValuation make(mpq_class s, mpq_class t, MultiPoly P, MultiPoly Q, MultiPoly Pinv, MultiPoly Qinv);
  /// -deg: basis (x, y), weight (1, 1).
  static MonomialValuation minus_degree(Field f);
};

/// Throws ZeroPolynomial.
mpq_class monomial_valuation(const MonomialValuation& v, const MultiPoly& F);

/// min(s, t) is attained by -v on the basis and bounds -v on every sample.
bool check_min_weight_property(const MonomialValuation& v, const std::vector<MultiPoly>& samples);

/// Conjugation of (lambda x^d, F) by N = (mu x, beta y + gamma(x)) into
/// (x^d, y^d + sum_{j >= 2} a_j(x) y^{d-j}).
struct FiberNormalization {
  AffinePlaneMap change;      // N
  AffinePlaneMap change_inv;  // N^{-1}
  AffinePlaneMap normalized;  // N o f o N^{-1}
  FieldElem mu, beta;
  LaurentPoly gamma;
};

/// Errors: NoDthRoot (mu^{d-1} = lambda or beta^{d-1} = a_0 has no solution
/// in the field), CharDividesD, InvalidArgument (not of the fibered form).
FiberNormalization normalize_endo_p2_fiber(const AffinePlaneMap& f);

/// Projective linear extension of a degree-one plane automorphism. Throws
/// TheoremViolation when h has degree at least 2.
PglElem case_p1(const AffinePlaneMap& f1, const AffinePlaneMap& f2, const AffinePlaneMap& h);

struct P2Report {
  int d = 0;     // degree after the optional squaring step
  int sign = 1;  // sign of the exponent of x in the first components
  JonquieresData normalized_h;
  bool case_b = false;
  std::vector<std::string> relations;
};

/// Linear conjugator of f1 to f2 (maps on the chart x != 0) given a
/// Jonquieres conjugator. Errors: RelationViolated, UnexpectedM.
PglElem case_p2(const AffinePlaneMap& f1, const AffinePlaneMap& f2, const JonquieresData& h,
                P2Report* report = nullptr);

struct P3Report {
  PermMatrix A1, A2;
  S3Solution solution;
  std::array<FieldElem, 2> w;  // diagonal part of the returned map
  bool used_th = false;        // w equals the diagonal part of h
  unsigned order_u = 0, order_v = 0;
  std::vector<std::string> relations;
};

/// Linear conjugator for f_i = a_i o g_d (up to diagonal scalars) and a torus
/// automorphism h. Errors: NotConjugate, TheoremViolation.
PglElem case_p3(const EndoP2& f1, const EndoP2& f2, const MonomialData& h, P3Report* report = nullptr);

enum class CaseTag { P0, P1, P2a, P2b, P3a, P3b };
std::string_view case_name(CaseTag t);

struct Certificate {
  ConfigTag config = ConfigTag::P0;
  std::optional<NormalizationRecord> normalization;
  std::optional<JonquieresData> jonquieres;
  std::optional<MonomialData> monomial;
  std::optional<P2Report> p2;
  std::optional<P3Report> p3;
  std::vector<std::string> notes;
};

struct LinearizeResult {
  PglElem h_prime;
  CaseTag tag;
  Certificate certificate;
  bool verified = false;
};

/// Linear conjugator of f1 to f2 from a birational one. The returned map is
/// checked against the original pair; a failed check throws
/// TheoremViolation. Errors: DegreeMismatch, DegreeTooSmall, NotConjugate,
/// InverseRequired and the errors of the case procedures.
LinearizeResult linearize(const EndoP2& f1, const EndoP2& f2, const BirMapP2& h);

}  // namespace birconj
