#include "birconj/linearize.hpp"

#include <algorithm>

#include "birconj/error.hpp"

namespace birconj {

// ---------------------------------------------------------------- valuations

MonomialValuation MonomialValuation::make(mpq_class s, mpq_class t, MultiPoly P, MultiPoly Q, MultiPoly Pinv,
                                          MultiPoly Qinv) {
  s.canonicalize();
  t.canonicalize();
  if (s < 0 || t < 0) throw Error(Errc::InvalidArgument, "weights must be non-negative");
  for (const MultiPoly* p : {&P, &Q, &Pinv, &Qinv})
    if (p->uses(kZ)) throw Error(Errc::InvalidArgument, "basis polynomials must involve only x and y");
  Field f = P.field();
  MultiPoly x = MultiPoly::variable(f, kX), y = MultiPoly::variable(f, kY), z = MultiPoly::variable(f, kZ);
  std::array<MultiPoly, 3> fwd{P, Q, z}, inv{Pinv, Qinv, z};
  if (P.substitute(inv) != x || Q.substitute(inv) != y || Pinv.substitute(fwd) != x || Qinv.substitute(fwd) != y)
    throw Error(Errc::InvalidInverse, "(Pinv, Qinv) is not inverse to (P, Q)");
  return MonomialValuation{std::move(s), std::move(t), std::move(P), std::move(Q), std::move(Pinv), std::move(Qinv)};
}

MonomialValuation MonomialValuation::minus_degree(Field f) {
  MultiPoly x = MultiPoly::variable(f, kX), y = MultiPoly::variable(f, kY);
  return make(1, 1, x, y, x, y);
}

mpq_class monomial_valuation(const MonomialValuation& v, const MultiPoly& F) {
  if (F.is_zero()) throw Error(Errc::ZeroPolynomial, "valuation of the zero polynomial");
  std::array<MultiPoly, 3> inv{v.Pinv, v.Qinv, MultiPoly::variable(F.field(), kZ)};
  MultiPoly G = F.substitute(inv);
  std::optional<mpq_class> best;
  for (const auto& [e, c] : G.terms()) {
    mpq_class w = v.s * e[0] + v.t * e[1];
    if (!best || w > *best) best = w;
  }
  return -*best;
}

bool check_min_weight_property(const MonomialValuation& v, const std::vector<MultiPoly>& samples) {
  mpq_class m = std::min(v.s, v.t);
  mpq_class lowest = std::min(-monomial_valuation(v, v.P), -monomial_valuation(v, v.Q));
  for (const auto& F : samples) {
    if (F.is_constant()) continue;
    mpq_class w = -monomial_valuation(v, F);
    if (w < m) return false;
    lowest = std::min(lowest, w);
  }
  return lowest == m;
}

// ---------------------------------------------------------------- helpers

namespace {

LaurentPoly y_coeff(const Laurent2& g, int k) {
  LaurentPoly r(g.field());
  for (const auto& [e, c] : g.terms())
    if (e[1] == k) r.add_term(e[0], c);
  return r;
}

Laurent2 in_x(const LaurentPoly& c) {
  Laurent2 r(c.field());
  for (const auto& [e, v] : c.terms()) r.add_term(e, 0, v);
  return r;
}

Laurent2 X(Field f) { return Laurent2::monomial(f.one(), 1, 0); }
Laurent2 Y(Field f) { return Laurent2::monomial(f.one(), 0, 1); }

PglElem pgl_of(const AffinePlaneMap& m) { return PglElem::from_triple(m.to_triple()); }

FieldElem preferred_root(const FieldElem& a, unsigned n) {
  auto roots = nth_roots(a, n);
  if (roots.empty())
    throw Error(Errc::NoDthRoot, a.to_string() + " has no " + std::to_string(n) + "-th root in " + a.field().spec());
  Field f = a.field();
  if (std::find(roots.begin(), roots.end(), f.one()) != roots.end()) return f.one();
  return roots.front();
}

// x-exponent of a first component lambda x^e.
std::pair<int, FieldElem> base_monomial(const AffinePlaneMap& f) {
  const Laurent2& p = f.first();
  if (!p.is_monomial() || p.terms().begin()->first[1] != 0)
    throw Error(Errc::TheoremViolation, "first component " + p.to_string() + " is not a monomial in x");
  return {p.terms().begin()->first[0], p.terms().begin()->second};
}

}  // namespace

// ---------------------------------------------------------------- case P1

PglElem case_p1(const AffinePlaneMap&, const AffinePlaneMap&, const AffinePlaneMap& h) {
  for (const Laurent2* c : {&h.first(), &h.second()})
    if (!c->is_polynomial() || c->to_poly().total_degree() > 1)
      throw Error(Errc::TheoremViolation, "plane automorphism " + h.to_string() + " has degree at least 2");
  return pgl_of(h);
}

// ---------------------------------------------------------------- fiber normalization

FiberNormalization normalize_endo_p2_fiber(const AffinePlaneMap& f) {
  Field F = f.field();
  auto [e, lambda] = base_monomial(f);
  const Laurent2& q = f.second();
  int d = q.max_exp(1);
  if (d < 2 || e != d || q.min_exp(1) < 0)
    throw Error(Errc::InvalidArgument, f.to_string() + " is not of the form (lambda x^d, F(x, y)) with deg_y F = d >= 2");
  if (F.characteristic() != 0 && d % long(F.characteristic()) == 0)
    throw Error(Errc::CharDividesD, "characteristic divides d = " + std::to_string(d));
  Laurent2 x = X(F), y = Y(F);

  FieldElem mu = preferred_root(lambda, unsigned(d - 1));
  AffinePlaneMap s1(Chart::A2, x.scaled(mu), y), s1i(Chart::A2, x.scaled(mu.inverse()), y);
  AffinePlaneMap g = s1.compose(f).compose(s1i);

  LaurentPoly a0 = y_coeff(g.second(), d);
  if (a0.terms().size() != 1 || a0.min_exponent() != 0)
    throw Error(Errc::InvalidArgument, "leading coefficient in y of " + g.second().to_string() + " is not a constant");
  FieldElem beta = preferred_root(a0.coeff(0), unsigned(d - 1));
  AffinePlaneMap s2(Chart::A2, x, y.scaled(beta)), s2i(Chart::A2, x, y.scaled(beta.inverse()));
  g = s2.compose(g).compose(s2i);

  LaurentPoly c = y_coeff(g.second(), d - 1).scaled(F.from_int(d).inverse());
  Chart tc = c.is_polynomial() ? Chart::A2 : Chart::XNonzero;
  AffinePlaneMap t(tc, x, y + in_x(c)), ti(tc, x, y - in_x(c));
  g = t.compose(g).compose(ti);

  AffinePlaneMap n = t.compose(s2).compose(s1);
  AffinePlaneMap ni = s1i.compose(s2i).compose(ti);
  return FiberNormalization{n, ni, g, mu, beta, c.rescaled_variable(mu)};
}

// ---------------------------------------------------------------- case P2

PglElem case_p2(const AffinePlaneMap& f1, const AffinePlaneMap& f2, const JonquieresData& h, P2Report* report) {
  Field F = f1.field();
  P2Report rep;
  int e1 = base_monomial(f1).first, e2 = base_monomial(f2).first;
  if ((e1 > 0) != (e2 > 0)) throw Error(Errc::RelationViolated, "first components have exponents of opposite signs");
  rep.sign = e1 > 0 ? 1 : -1;
  AffinePlaneMap g1 = f1, g2 = f2;
  if (e1 < 0) {
    if (h.m != 0) throw Error(Errc::RelationViolated, "negative exponent forces m = 0, got m = " + std::to_string(h.m));
    rep.relations.push_back("m = 0 (negative exponent); squares used");
    g1 = f1.compose(f1);
    g2 = f2.compose(f2);
  }
  FiberNormalization n1 = normalize_endo_p2_fiber(g1), n2 = normalize_endo_p2_fiber(g2);
  AffinePlaneMap ht = n2.change.compose(h.recompose()).compose(n1.change_inv);
  JonquieresData jd = jonquieres_decompose(ht);
  int D = n1.normalized.second().max_exp(1);
  rep.d = D;
  rep.normalized_h = jd;

  auto require = [&](bool ok, const std::string& what) {
    if (!ok) throw Error(Errc::RelationViolated, what + " fails");
    rep.relations.push_back(what);
  };
  require(jd.A.pow(D - 1).is_one(), "A^" + std::to_string(D - 1) + " = 1");
  require(jd.B.pow(D - 1).is_one(), "B^" + std::to_string(D - 1) + " = 1");
  require(jd.C.is_zero(), "C = 0");
  bool all_zero = true;
  for (int j = 2; j <= D; ++j) {
    LaurentPoly a = y_coeff(n1.normalized.second(), D - j), b = y_coeff(n2.normalized.second(), D - j);
    all_zero = all_zero && a.is_zero() && b.is_zero();
    LaurentPoly rhs = a * LaurentPoly::monomial(jd.B.pow(j), jd.m * j);
    require(b.rescaled_variable(jd.A) == rhs, "b_" + std::to_string(j) + "(A x) = a_" + std::to_string(j) +
                                                  "(x) (B x^m)^" + std::to_string(j));
  }

  FieldElem zero = F.zero(), one = F.one();
  auto swap_map = [&](const FieldElem& a, const FieldElem& b) {
    return PglElem(PglElem::Matrix{Vec3{zero, zero, a / b}, Vec3{zero, one, zero}, Vec3{one, zero, zero}});
  };
  std::optional<PglElem> k;
  if (jd.m == 0 || all_zero) {
    k = PglElem::diagonal(jd.A, jd.B, one);
  } else if (jd.m == 1) {
    k = swap_map(jd.A, jd.B);
    rep.case_b = true;
  } else if (jd.m == -1) {
    // h^{-1} = (x / A, x y / (A B)) conjugates f2 to f1 with m = 1.
    k = swap_map(jd.A.inverse(), (jd.A * jd.B).inverse()).inverse();
    rep.case_b = true;
  } else {
    throw Error(Errc::UnexpectedM, "m = " + std::to_string(jd.m) + " with a nonzero coefficient a_j");
  }
  if (!verify_conjugacy(k->triple(), n1.normalized.to_triple(), n2.normalized.to_triple()))
    throw Error(Errc::TheoremViolation, "linear map " + k->to_string() + " does not conjugate the normalized pair");
  if (report) *report = rep;
  return pgl_of(n2.change_inv) * *k * pgl_of(n1.change);
}

// ---------------------------------------------------------------- case P3

namespace {

struct TorusEndo {
  std::array<FieldElem, 2> c;
  IntMat2 E;
};

TorusEndo torus_form(const EndoP2& f) {
  AffinePlaneMap m = AffinePlaneMap::from_triple(f.components(), Chart::Torus);
  if (!m.first().is_monomial() || !m.second().is_monomial())
    throw Error(Errc::TheoremViolation, f.to_string() + " is not a monomial map on the torus");
  const auto& [e1, c1] = *m.first().terms().begin();
  const auto& [e2, c2] = *m.second().terms().begin();
  return {{c1, c2}, {{{{e1[0], e1[1]}, {e2[0], e2[1]}}}}};
}

PermMatrix perm_part(const TorusEndo& t, int d) {
  IntMat2 a;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (t.E.a[i][j] % d != 0) throw Error(Errc::TheoremViolation, "exponent matrix is not d times a permutation");
      a.a[i][j] = t.E.a[i][j] / d;
    }
  auto p = s3_find(a);
  if (!p) throw Error(Errc::TheoremViolation, "exponent matrix " + a.to_string() + " is not a coordinate permutation");
  return *p;
}

// D = L N R with L, R unimodular and D diagonal.
void diagonalize(IntMat2 n, IntMat2& L, IntMat2& D, IntMat2& R) {
  L = R = IntMat2::identity();
  auto swap_rows = [](IntMat2& m) { std::swap(m.a[0], m.a[1]); };
  auto swap_cols = [](IntMat2& m) {
    std::swap(m.a[0][0], m.a[0][1]);
    std::swap(m.a[1][0], m.a[1][1]);
  };
  for (;;) {
    int bi = -1, bj = -1;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (n.a[i][j] != 0 && (bi < 0 || std::abs(n.a[i][j]) < std::abs(n.a[bi][bj]))) bi = i, bj = j;
    if (bi < 0) throw Error(Errc::InvalidArgument, "singular exponent system");
    if (bi == 1) swap_rows(n), swap_rows(L);
    if (bj == 1) swap_cols(n), swap_cols(R);
    long q = n.a[1][0] / n.a[0][0];
    for (int j = 0; j < 2; ++j) n.a[1][j] -= q * n.a[0][j], L.a[1][j] -= q * L.a[0][j];
    q = n.a[0][1] / n.a[0][0];
    for (int i = 0; i < 2; ++i) n.a[i][1] -= q * n.a[i][0], R.a[i][1] -= q * R.a[i][0];
    if (n.a[1][0] == 0 && n.a[0][1] == 0) break;
  }
  D = n;
}

// Solve w^N = r for the componentwise monomial map w -> w^N, taking the first
// root at each step.
std::optional<std::array<FieldElem, 2>> solve_monomial(const IntMat2& N, const std::array<FieldElem, 2>& r) {
  IntMat2 L, D, R;
  diagonalize(N, L, D, R);
  std::array<FieldElem, 2> rp = monomial_apply(L, r), s = rp;
  for (int i = 0; i < 2; ++i) {
    long e = D.a[i][i];
    FieldElem target = e < 0 ? rp[i].inverse() : rp[i];
    auto roots = nth_roots(target, unsigned(std::abs(e)));
    if (roots.empty()) return std::nullopt;
    s[i] = roots.front();
  }
  return monomial_apply(R, s);
}

}  // namespace

PglElem case_p3(const EndoP2& f1, const EndoP2& f2, const MonomialData& h, P3Report* report) {
  int d = f1.degree();
  TorusEndo t1 = torus_form(f1), t2 = torus_form(f2);
  P3Report rep{perm_part(t1, d), perm_part(t2, d), {}, {h.u, h.v}, false, 0, 0, {}};
  rep.order_u = multiplicative_order(h.u, 1u << 12);
  rep.order_v = multiplicative_order(h.v, 1u << 12);
  rep.solution = s3_solve_conjugacy(rep.A1, rep.A2, h.M);
  if (rep.solution.kind == S3Solution::Kind::None) {
    // The S3 element may still exist when h itself has the wrong matrix.
    for (const auto& p : s3_elements())
      if (p.M * rep.A1.M * p.M.inverse() == rep.A2.M) {
        rep.solution.P = p;
        break;
      }
    if (!rep.solution.P)
      throw Error(Errc::NotConjugate, rep.A1.label + " and " + rep.A2.label + " are not conjugate in S3");
    rep.relations.push_back("M_h does not conjugate A1 to A2; P chosen by search");
  }
  IntMat2 dA2 = d * rep.A2.M;
  IntMat2 N = dA2;
  N.a[0][0] -= 1;
  N.a[1][1] -= 1;
  // The witness P first, then the rest of its coset; the diagonal part w
  // must solve w c1^P = c2 w^{d A2}.
  std::vector<PermMatrix> candidates{*rep.solution.P};
  for (const auto& p : s3_elements())
    if (p.M * rep.A1.M * p.M.inverse() == rep.A2.M && p.M != rep.solution.P->M) candidates.push_back(p);
  std::optional<std::array<FieldElem, 2>> found;
  for (const auto& cand : candidates) {
    auto lhs = monomial_apply(cand.M, t1.c);
    auto satisfies = [&](const std::array<FieldElem, 2>& w) {
      auto rhs = monomial_apply(dA2, w);
      return w[0] * lhs[0] == t2.c[0] * rhs[0] && w[1] * lhs[1] == t2.c[1] * rhs[1];
    };
    if (satisfies(rep.w)) {
      rep.used_th = true;
      found = rep.w;
    } else if (auto w = solve_monomial(N, {lhs[0] / t2.c[0], lhs[1] / t2.c[1]}); w && satisfies(*w)) {
      found = *w;
    }
    if (found) {
      if (cand.M != rep.solution.P->M) rep.relations.push_back("diagonal part solved with P = " + cand.label);
      rep.solution.P = cand;
      break;
    }
  }
  if (!found) throw Error(Errc::NoDthRoot, "diagonal part of the conjugator is not defined over " + f1.field().spec());
  rep.w = *found;
  const IntMat2& P = rep.solution.P->M;
  rep.relations.push_back("P A1 P^-1 = A2");
  AffinePlaneMap hp(Chart::Torus, Laurent2::monomial(rep.w[0], int(P.a[0][0]), int(P.a[0][1])),
                    Laurent2::monomial(rep.w[1], int(P.a[1][0]), int(P.a[1][1])));
  PglElem out = pgl_of(hp);
  if (!verify_conjugacy(out, f1, f2))
    throw Error(Errc::TheoremViolation, "linear map " + out.to_string() + " does not conjugate the normalized pair");
  if (report) *report = rep;
  return out;
}

// ---------------------------------------------------------------- dispatcher

std::string_view case_name(CaseTag t) {
  switch (t) {
    case CaseTag::P0: return "P0";
    case CaseTag::P1: return "P1";
    case CaseTag::P2a: return "P2a";
    case CaseTag::P2b: return "P2b";
    case CaseTag::P3a: return "P3a";
    case CaseTag::P3b: return "P3b";
  }
  return "P0";
}

LinearizeResult linearize(const EndoP2& f1, const EndoP2& f2, const BirMapP2& h) {
  if (f1.degree() != f2.degree())
    throw Error(Errc::DegreeMismatch, "conjugate endomorphisms share the degree; got " + std::to_string(f1.degree()) +
                                          " and " + std::to_string(f2.degree()));
  if (f1.degree() < 2)
    throw Error(Errc::DegreeTooSmall, "degree 1 is out of scope: birationally conjugate automorphisms need not be "
                                      "linearly conjugate");
  if (!verify_conjugacy(h, f1, f2)) throw Error(Errc::NotConjugate, "h o f1 differs from f2 o h");

  Certificate cert;
  auto finish = [&](const PglElem& hp, CaseTag tag) {
    if (!verify_conjugacy(hp, f1, f2))
      throw Error(Errc::TheoremViolation, "returned map " + hp.to_string() + " fails the conjugacy check");
    return LinearizeResult{hp, tag, std::move(cert), true};
  };
  if (h.degree() == 1) {
    cert.notes.push_back("h is already linear");
    return finish(*h.as_pgl(), CaseTag::P0);
  }
  NormalizationRecord rec = normalize_pair(f1, f2, h);
  cert.config = rec.config.tag;
  PglElem hn_prime = PglElem::identity(f1.field());
  CaseTag tag = CaseTag::P0;
  switch (rec.config.tag) {
    case ConfigTag::P0:
      throw Error(Errc::TheoremViolation, "empty exceptional set for a map of degree " + std::to_string(h.degree()));
    case ConfigTag::P1: {
      AffinePlaneMap local = AffinePlaneMap::from_triple(rec.hn.forward(), Chart::A2);
      hn_prime = case_p1(AffinePlaneMap::from_triple(rec.f1n.components(), Chart::A2),
                         AffinePlaneMap::from_triple(rec.f2n.components(), Chart::A2), local);
      tag = CaseTag::P1;
      break;
    }
    case ConfigTag::P2: {
      JonquieresData jd = jonquieres_decompose(AffinePlaneMap::from_triple(rec.hn.forward(), Chart::XNonzero));
      P2Report rep;
      hn_prime = case_p2(AffinePlaneMap::from_triple(rec.f1n.components(), Chart::XNonzero),
                         AffinePlaneMap::from_triple(rec.f2n.components(), Chart::XNonzero), jd, &rep);
      tag = rep.case_b ? CaseTag::P2b : CaseTag::P2a;
      cert.jonquieres = jd;
      cert.p2 = rep;
      break;
    }
    case ConfigTag::P3: {
      MonomialData md = monomial_decompose(AffinePlaneMap::from_triple(rec.hn.forward(), Chart::Torus));
      P3Report rep;
      hn_prime = case_p3(rec.f1n, rec.f2n, md, &rep);
      tag = rep.solution.kind == S3Solution::Kind::Trivial ? CaseTag::P3a : CaseTag::P3b;
      cert.monomial = md;
      cert.p3 = rep;
      break;
    }
  }
  PglElem hp = rec.undo(hn_prime);
  cert.normalization = std::move(rec);
  return finish(hp, tag);
}

}  // namespace birconj
