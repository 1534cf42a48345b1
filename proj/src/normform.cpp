#include "birconj/normform.hpp"

#include <algorithm>

#include "birconj/error.hpp"

namespace birconj {

// ---------------------------------------------------------------- IntMat2

IntMat2 IntMat2::inverse() const {
  long d = det();
  if (d != 1 && d != -1) throw Error(Errc::NotInvertible, "integer matrix with determinant " + std::to_string(d));
  return {{{{a[1][1] * d, -a[0][1] * d}, {-a[1][0] * d, a[0][0] * d}}}};
}

IntMat2 IntMat2::operator-() const { return -1 * *this; }

IntMat2 IntMat2::pow(int n) const {
  IntMat2 base = n < 0 ? inverse() : *this, r = identity();
  for (int k = std::abs(n); k > 0; --k) r = r * base;
  return r;
}

IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
  IntMat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.a[i][j] = x.a[i][0] * y.a[0][j] + x.a[i][1] * y.a[1][j];
  return r;
}

IntMat2 operator*(long s, const IntMat2& x) {
  IntMat2 r = x;
  for (auto& row : r.a)
    for (auto& v : row) v *= s;
  return r;
}

std::string IntMat2::to_string() const {
  return "[[" + std::to_string(a[0][0]) + ", " + std::to_string(a[0][1]) + "], [" + std::to_string(a[1][0]) + ", " +
         std::to_string(a[1][1]) + "]]";
}

std::array<FieldElem, 2> monomial_apply(const IntMat2& m, const std::array<FieldElem, 2>& c) {
  return {c[0].pow(m.a[0][0]) * c[1].pow(m.a[0][1]), c[0].pow(m.a[1][0]) * c[1].pow(m.a[1][1])};
}

// ---------------------------------------------------------------- decompositions

AffinePlaneMap JonquieresData::recompose() const {
  Laurent2 q = Laurent2::monomial(B, m, 1);
  for (const auto& [e, c] : C.terms()) q.add_term(e, 0, c);
  return AffinePlaneMap(Chart::XNonzero, Laurent2::monomial(A, 1, 0), q);
}

JonquieresData jonquieres_decompose(const AffinePlaneMap& h) {
  const Laurent2& p = h.first();
  if (!p.is_monomial() || p.terms().begin()->first != Exponent{1, 0, 0})
    throw Error(Errc::NotJonquieres, "first component " + p.to_string() + " is not of the form A*x");
  Field f = h.field();
  JonquieresData out{p.terms().begin()->second, f.zero(), 0, LaurentPoly(f)};
  bool have_b = false;
  for (const auto& [e, c] : h.second().terms()) {
    if (e[1] == 0) {
      out.C.add_term(e[0], c);
    } else if (e[1] == 1 && !have_b) {
      out.B = c;
      out.m = e[0];
      have_b = true;
    } else {
      throw Error(Errc::NotJonquieres, "second component " + h.second().to_string() + " is not B*x^m*y + C(x)");
    }
  }
  if (!have_b) throw Error(Errc::NotJonquieres, "second component " + h.second().to_string() + " does not involve y");
  return out;
}

AffinePlaneMap MonomialData::recompose() const {
  return AffinePlaneMap(Chart::Torus, Laurent2::monomial(u, int(M.a[0][0]), int(M.a[0][1])),
                        Laurent2::monomial(v, int(M.a[1][0]), int(M.a[1][1])));
}

MonomialData monomial_decompose(const AffinePlaneMap& h) {
  if (!h.first().is_monomial() || !h.second().is_monomial())
    throw Error(Errc::NotMonomial, h.to_string() + " is not a monomial map");
  const auto& [e1, u] = *h.first().terms().begin();
  const auto& [e2, v] = *h.second().terms().begin();
  MonomialData out{u, v, {{{{e1[0], e1[1]}, {e2[0], e2[1]}}}}};
  long d = out.M.det();
  if (d != 1 && d != -1) throw Error(Errc::NotInvertible, "exponent matrix with determinant " + std::to_string(d));
  return out;
}

// ---------------------------------------------------------------- S3

const std::vector<PermMatrix>& s3_elements() {
  static const std::vector<PermMatrix> elems = [] {
    std::vector<PermMatrix> out;
    Field Q = Field::rationals();
    std::array<int, 3> perm{0, 1, 2};
    const char* names = "xyz";
    do {
      Triple t = PglElem::permutation(Q, perm).triple();
      MonomialData md = monomial_decompose(AffinePlaneMap::from_triple(t, Chart::Torus));
      std::string label = "[";
      for (int i = 0; i < 3; ++i) label += std::string(i ? ":" : "") + names[perm[i]];
      out.push_back({perm, md.M, label + "]"});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }();
  return elems;
}

std::optional<PermMatrix> s3_find(const IntMat2& m) {
  for (const auto& e : s3_elements())
    if (e.M == m) return e;
  return std::nullopt;
}

namespace {

int matrix_order(const IntMat2& m) {
  IntMat2 p = m;
  for (int k = 1; k <= 6; ++k, p = p * m)
    if (p == IntMat2::identity()) return k;
  return 0;
}

}  // namespace

S3Solution s3_solve_conjugacy(const PermMatrix& a1, const PermMatrix& a2, const IntMat2& m) {
  const IntMat2 id = IntMat2::identity();
  S3Solution out;
  if (a1.M == id && a2.M == id) {
    out.kind = S3Solution::Kind::Trivial;
    out.P = s3_elements().front();
    return out;
  }
  if (m * a1.M * m.inverse() != a2.M) return out;
  int ord = std::max(1, matrix_order(a2.M));
  for (const auto& p : s3_elements()) {
    if (p.M * a1.M * p.M.inverse() != a2.M) continue;
    for (int j = 0; j < ord; ++j)
      for (int sign : {1, -1})
        if (m == sign * (a2.M.pow(j) * p.M)) {
          out.kind = S3Solution::Kind::Witness;
          out.P = p;
          out.j = j;
          out.sign = sign;
          return out;
        }
  }
  return out;
}

// ---------------------------------------------------------------- standardization

PglElem standardize_config(const LineConfig& config) {
  const auto& ls = config.lines;
  Field f = ls.empty() ? Field::rationals() : ls[0][0].field();
  if (config.tag == ConfigTag::P0) return PglElem::identity(f);
  auto unit = [&](int j) {
    Vec3 e{f.zero(), f.zero(), f.zero()};
    e[j] = f.one();
    return e;
  };
  auto attempt = [](const PglElem::Matrix& m) -> std::optional<PglElem> {
    try {
      return PglElem(m);
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  switch (config.tag) {
    case ConfigTag::P1:
      for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}})
        if (auto m = attempt({unit(i), unit(j), ls[0]})) return *m;
      break;
    case ConfigTag::P2:
      for (int j : {1, 0, 2})
        if (auto m = attempt({ls[0], unit(j), ls[1]})) return *m;
      break;
    case ConfigTag::P3:
      if (auto m = attempt({ls[0], ls[1], ls[2]})) return *m;
      break;
    case ConfigTag::P0: break;
  }
  throw Error(Errc::NotInClassification, "line configuration is not in general position");
}

namespace {

BirMapP2 transform(const PglElem& a, const BirMapP2& h, const PglElem& b) {
  Triple fwd = compose(a.triple(), compose(h.forward(), b.triple()));
  Triple inv = compose(b.inverse().triple(), compose(*h.inverse_triple(), a.inverse().triple()));
  return BirMapP2::make(fwd, inv);
}

std::vector<Vec3> exc_lines(const ExcData& e, const char* which, std::vector<std::string>& warnings) {
  auto ls = e.lines();
  if (!ls) throw Error(Errc::TheoremViolation, std::string("Exc(") + which + ") contains a curve that is not a line");
  for (const auto& w : e.warnings) warnings.push_back(std::string("Exc(") + which + "): " + w);
  return *ls;
}

}  // namespace

NormalizationRecord normalize_pair(const EndoP2& f1, const EndoP2& f2, const BirMapP2& h0) {
  if (f1.degree() != f2.degree()) throw Error(Errc::NotConjugate, "endomorphisms of different degrees");
  if (!verify_conjugacy(h0, f1, f2)) throw Error(Errc::NotConjugate, "h o f1 differs from f2 o h");
  BirMapP2 h = h0.with_inverse();
  std::vector<std::string> warnings;
  LineConfig c1 = classify(exc_lines(exc_set(h.forward()), "h", warnings));
  LineConfig c2 = classify(exc_lines(exc_set(*h.inverse_triple()), "h^-1", warnings));
  if (c1.tag != c2.tag)
    throw Error(Errc::NotInClassification, "Exc(h) has type " + std::string(tag_name(c1.tag)) + " but Exc(h^-1) has type " +
                                              std::string(tag_name(c2.tag)));
  PglElem B = standardize_config(c1).inverse();
  PglElem A = standardize_config(c2);
  BirMapP2 hn = transform(A, h, B);
  if (c1.tag == ConfigTag::P2) {
    AffinePlaneMap local = [&] {
      try {
        return AffinePlaneMap::from_triple(hn.forward(), Chart::XNonzero);
      } catch (const Error&) {
        throw Error(Errc::TheoremViolation, "normalized h is not regular on {x != 0}");
      }
    }();
    const Laurent2& p = local.first();
    if (p.is_monomial() && p.terms().begin()->first == Exponent{-1, 0, 0}) {
      A = PglElem::permutation(f1.field(), {2, 1, 0}) * A;
      hn = transform(A, h, B);
    }
  }
  EndoP2 f1n = act_pgl(B, f1, Side::Conjugate);
  EndoP2 f2n = act_pgl(A.inverse(), f2, Side::Conjugate);
  if (!verify_conjugacy(hn, f1n, f2n))
    throw Error(Errc::TheoremViolation, "normalized triple fails the conjugacy relation");
  LineConfig std_config = c1;
  std_config.lines.clear();
  for (const auto& l : c1.lines) std_config.lines.push_back(B.inverse().apply_line(l));
  std::sort(std_config.lines.begin(), std_config.lines.end(), line_less);
  return NormalizationRecord{A, B, f1n, f2n, hn, std_config, warnings};
}

}  // namespace birconj
