#include "birconj/charplab.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "birconj/error.hpp"

namespace birconj {

namespace {

MultiPoly var(Field f, int v) { return MultiPoly::variable(f, v); }

std::uint32_t ipow(std::uint32_t b, unsigned e) {
  std::uint32_t r = 1;
  while (e--) r *= b;
  return r;
}

bool only_uses(const MultiPoly& p, int v) {
  for (int i = 0; i < 3; ++i)
    if (i != v && p.uses(i)) return false;
  return true;
}

AffinePlaneMap plane_map(const MultiPoly& a, const MultiPoly& b) {
  return AffinePlaneMap(Chart::A2, Laurent2::from_poly(a), Laurent2::from_poly(b));
}

// Coefficients of a polynomial in y, low degree first.
std::vector<FieldElem> y_coeffs(const MultiPoly& p, Field target) {
  if (!only_uses(p, kY)) throw Error(Errc::InvalidArgument, p.to_string() + " is not a polynomial in y alone");
  std::vector<FieldElem> out;
  for (const auto& c : p.coefficients_in(kY)) out.push_back(embed(c.constant_term(), target));
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

// Restriction of f to L_a in the coordinate y.
MultiPoly restriction_on(const EndoP2& f, const PencilParam& a) {
  Field F = f.field();
  const Triple& t = f.components();
  if (!a) {
    auto at = [&](const MultiPoly& c) { return c.specialize(kZ, F.zero()).specialize(kX, F.one()); };
    MultiPoly c0 = at(t[0]), c1 = at(t[1]), c2 = at(t[2]);
    if (!c2.is_zero() || !c0.is_constant() || c0.is_zero())
      throw Error(Errc::InvalidArgument, "L_inf is not mapped to itself by y -> [1 : y : 0]");
    return c1.scaled(c0.constant_term().inverse());
  }
  AffinePlaneMap m = AffinePlaneMap::from_triple(t, Chart::A2);
  MultiPoly first = m.first().to_poly().specialize(kX, *a);
  if (first != MultiPoly::constant(*a))
    throw Error(Errc::InvalidArgument, "L_" + a->to_string() + " is not mapped to itself");
  return m.second().to_poly().specialize(kX, *a);
}

// Both maps are (x^q, y^q + R) with deg R < q, so the degree-q terms of
// h o f1 = f2 o h for h = (x, alpha y + beta x + gamma) give alpha^q = alpha
// and beta^q = beta.
bool degree_q_form(const EndoP2& f) {
  Field F = f.field();
  int q = f.degree();
  AffinePlaneMap m = AffinePlaneMap::from_triple(f.components(), Chart::A2);
  if (m.first().to_poly() != MultiPoly::monomial(F.one(), {q, 0, 0})) return false;
  MultiPoly rest = m.second().to_poly() - MultiPoly::monomial(F.one(), {0, q, 0});
  return rest.total_degree() < q;
}

}  // namespace

std::uint32_t CharPConfig::q() const { return ipow(p, s); }

// ---------------------------------------------------------------- construction

Counterexample build_counterexample(const CharPConfig& cfg) {
  if (cfg.s < 2) throw Error(Errc::DegreeBoundViolated, "q = p^s needs s >= 2");
  Field F = Field::finite(cfg.p, cfg.s);
  if (!(cfg.P.field() == F)) throw Error(Errc::InvalidArgument, "P must be defined over " + F.spec());
  if (!only_uses(cfg.P, kX)) throw Error(Errc::InvalidArgument, "P must be a polynomial in x");
  int q = int(cfg.q()), p = int(cfg.p), dP = cfg.P.total_degree();
  if (dP < 2 || dP > q / p - 1)
    throw Error(Errc::DegreeBoundViolated, "deg P = " + std::to_string(dP) + " is outside [2, " +
                                               std::to_string(q / p - 1) + "]");
  MultiPoly x = var(F, kX), y = var(F, kY), z = var(F, kZ);
  MultiPoly G = x * y.pow(unsigned(p)) + (x - MultiPoly::constant(F.one())) * y;
  std::array<MultiPoly, 3> shift{x, y + cfg.P, z};
  MultiPoly Gs = G.substitute(shift);
  if (!(G.total_degree() < Gs.total_degree() && Gs.total_degree() < q))
    throw Error(Errc::DegreeBoundViolated, "degree chain " + std::to_string(G.total_degree()) + " < " +
                                               std::to_string(Gs.total_degree()) + " < " + std::to_string(q) +
                                               " fails");
  MultiPoly xq = x.pow(unsigned(q)), yq = y.pow(unsigned(q));
  AffinePlaneMap f1 = plane_map(xq, yq + G);
  AffinePlaneMap g = plane_map(x, y - cfg.P), g_inv = plane_map(x, y + cfg.P);
  AffinePlaneMap f2 = g.compose(f1).compose(g_inv);
  // P(x)^q = P(x^q) over F_q collapses g o f1 o g^{-1} to the closed form.
  if (!(f2 == plane_map(xq, yq + Gs)))
    throw Error(Errc::TheoremViolation, "g o f1 o g^-1 = " + f2.to_string() + " differs from the closed form");
  return Counterexample{cfg, F, G, Gs, EndoP2::make(f1.to_triple()), EndoP2::make(f2.to_triple()), g, g_inv};
}

bool verify_g_conjugacy(const EndoP2& f1, const EndoP2& f2, const AffinePlaneMap& g) {
  try {
    AffinePlaneMap a1 = AffinePlaneMap::from_triple(f1.components(), Chart::A2);
    AffinePlaneMap a2 = AffinePlaneMap::from_triple(f2.components(), Chart::A2);
    return g.compose(a1) == a2.compose(g);
  } catch (const Error& e) {
    if (e.code() == Errc::NotRegularOnChart) return false;
    throw;
  }
}

// ---------------------------------------------------------------- line dynamics

std::string_view line_class_name(LineClass c) {
  switch (c) {
    case LineClass::Power: return "power";
    case LineClass::Additive: return "additive";
    case LineClass::Mixed: return "mixed";
    case LineClass::Other: return "other";
  }
  return "other";
}

std::string param_name(const PencilParam& a) { return a ? a->to_string() : "inf"; }

std::array<MultiPoly, 3> line_models(Field f, int q) {
  MultiPoly yq = MultiPoly::monomial(f.one(), {0, q, 0});
  return {yq, yq - var(f, kY), yq + MultiPoly::monomial(f.one(), {0, int(f.characteristic()), 0})};
}

std::optional<std::pair<FieldElem, FieldElem>> affine_conjugacy_1d(const MultiPoly& u, const MultiPoly& v,
                                                                   unsigned k) {
  Field E = extension_of(u.field(), k);
  if (E.is_rational()) throw Error(Errc::InvalidArgument, "affine_conjugacy_1d searches a finite field");
  std::vector<FieldElem> uc = y_coeffs(u, E), vc = y_coeffs(v, E);
  if (uc.size() != vc.size() || uc.size() < 2) return std::nullopt;
  std::size_t n = uc.size() - 1;
  // Leading terms: alpha lc(u) = lc(v) alpha^n.
  FieldElem ratio = uc.back() / vc.back();
  std::vector<FieldElem> w;
  for (const auto& alpha : E.elements()) {
    if (alpha.is_zero() || alpha.pow(long(n) - 1) != ratio) continue;
    for (const auto& beta : E.elements()) {
      // w = v(alpha y + beta) by Horner.
      w.assign(n + 1, E.zero());
      for (std::size_t i = n + 1; i-- > 0;) {
        for (std::size_t j = n; j > 0; --j) w[j] = w[j] * beta + w[j - 1] * alpha;
        w[0] = w[0] * beta + vc[i];
      }
      bool same = w[0] == alpha * uc[0] + beta;
      for (std::size_t j = 1; same && j <= n; ++j) same = w[j] == alpha * uc[j];
      if (same) return std::pair{alpha, beta};
    }
  }
  return std::nullopt;
}

LineDynamics line_dynamics(const EndoP2& f, const PencilParam& a, unsigned k) {
  MultiPoly r = restriction_on(f, a);
  auto models = line_models(f.field(), f.degree());
  LineClass tag = LineClass::Other;
  for (int i = 0; i < 3 && tag == LineClass::Other; ++i)
    if (affine_conjugacy_1d(r, models[i], k)) tag = LineClass(i);
  return LineDynamics{a, r, tag};
}

BulletsReport uniqueness_bullets(const EndoP2& f, unsigned k) {
  Field F = f.field();
  if (F.is_rational()) throw Error(Errc::InvalidArgument, "the pencil is indexed by a finite field");
  std::vector<PencilParam> params{std::nullopt};
  for (const auto& a : F.elements()) params.push_back(a);
  auto models = line_models(F, f.degree());
  BulletsReport rep;
  for (const auto& a : params) {
    MultiPoly r = restriction_on(f, a);
    for (int i = 0; i < 3; ++i)
      if (affine_conjugacy_1d(r, models[i], k)) rep.matches[i].push_back(a);
  }
  const std::array<PencilParam, 3> expected{std::nullopt, F.zero(), F.one()};
  for (int i = 0; i < 3; ++i) {
    if (rep.matches[i].size() == 1 && rep.matches[i][0] == expected[i]) continue;
    std::string got;
    for (const auto& a : rep.matches[i]) got += (got.empty() ? "" : ", ") + param_name(a);
    throw Error(Errc::UniquenessFailed, std::string(line_class_name(LineClass(i))) + " model matches {" + got +
                                            "}, expected {" + param_name(expected[i]) + "}");
  }
  return rep;
}

// ---------------------------------------------------------------- search

PglElem AffineLineMap::as_pgl() const {
  Field f = alpha.field();
  return PglElem(PglElem::Matrix{Vec3{f.one(), f.zero(), f.zero()}, Vec3{beta, alpha, gamma},
                                 Vec3{f.zero(), f.zero(), f.one()}});
}

SearchReport search_linear_conjugator(const EndoP2& f1, const EndoP2& f2, unsigned k, unsigned threads,
                                      bool prune) {
  Field F = f1.field();
  if (F.is_rational() || !(f2.field() == F)) throw Error(Errc::InvalidArgument, "both maps must live over F_q");
  Field E = extension_of(F, k);
  SearchReport rep;
  rep.k = k;
  rep.pruned = prune;

  // Stage (i): the totally invariant lines are exactly the pencil.
  std::vector<Vec3> pencil{{E.zero(), E.zero(), E.one()}};
  for (const auto& a : F.elements()) pencil.push_back({E.one(), E.zero(), -embed(a, E)});
  std::sort(pencil.begin(), pencil.end(), line_less);
  auto l1 = invariant_lines(f1, k), l2 = invariant_lines(f2, k);
  rep.invariant_lines_f1 = l1.size();
  rep.invariant_lines_f2 = l2.size();
  if (l1 != pencil || l2 != pencil)
    throw Error(Errc::TheoremViolation, "totally invariant lines differ from the pencil through [0:1:0]");
  // Stage (ii): L_inf, L_0, L_1 are singled out, so h = (x, alpha y + beta x + gamma).
  uniqueness_bullets(f1, k);
  uniqueness_bullets(f2, k);
  if (prune && !(degree_q_form(f1) && degree_q_form(f2)))
    throw Error(Errc::InvalidArgument, "maps are not of the form (x^q, y^q + R) with deg R < q");

  std::uint64_t qk = E.order(), q = F.order();
  rep.candidates_total = (qk - 1) * qk * qk;
  std::vector<FieldElem> alphas, betas, gammas = E.elements();
  for (const auto& e : E.elements()) {
    bool fixed = e.pow(long(q)) == e;
    if (!prune || fixed) {
      if (!e.is_zero()) alphas.push_back(e);
      betas.push_back(e);
    }
  }

  EndoP2 g1 = f1.embedded(E), g2 = f2.embedded(E);
  AffinePlaneMap a1 = AffinePlaneMap::from_triple(g1.components(), Chart::A2);
  AffinePlaneMap a2 = AffinePlaneMap::from_triple(g2.components(), Chart::A2);
  std::array<MultiPoly, 2> p1{a1.first().to_poly(), a1.second().to_poly()};
  std::array<MultiPoly, 2> p2{a2.first().to_poly(), a2.second().to_poly()};
  // Cheap necessary condition at a few points before the exact check.
  std::vector<std::array<FieldElem, 3>> pts;
  for (std::uint32_t i = 0; i < 6; ++i)
    pts.push_back({E.from_index((3 * i + 1) % qk), E.from_index((5 * i + 2) % qk), E.one()});
  std::vector<std::array<FieldElem, 2>> lhs_base;
  for (const auto& pt : pts) lhs_base.push_back({p1[0].evaluate(pt), p1[1].evaluate(pt)});

  auto test = [&](const FieldElem& al, const FieldElem& be, const FieldElem& ga) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& pt = pts[i];
      std::array<FieldElem, 3> moved{pt[0], al * pt[1] + be * pt[0] + ga, E.one()};
      if (p2[0].evaluate(moved) != lhs_base[i][0]) return false;
      if (p2[1].evaluate(moved) != al * lhs_base[i][1] + be * lhs_base[i][0] + ga) return false;
    }
    return verify_conjugacy(AffineLineMap{al, be, ga}.as_pgl(), g1, g2);
  };

  // Each alpha slice is scanned in (beta, gamma) order; the smallest slice
  // with a witness wins.
  std::size_t na = alphas.size(), per_alpha = betas.size() * gammas.size();
  std::atomic<std::size_t> best{na};
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> found(na);
  auto worker = [&](unsigned tid, unsigned nt) {
    for (std::size_t ia = tid; ia < na; ia += nt) {
      if (ia > best.load()) return;
      for (std::size_t ib = 0; ib < betas.size() && !found[ia]; ++ib)
        for (std::size_t ig = 0; ig < gammas.size(); ++ig)
          if (test(alphas[ia], betas[ib], gammas[ig])) {
            found[ia] = std::pair{ib, ig};
            std::size_t cur = best.load();
            while (ia < cur && !best.compare_exchange_weak(cur, ia)) {
            }
            break;
          }
    }
  };
  unsigned nt = std::max(1u, threads);
  if (nt == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker, t, nt);
    for (auto& th : pool) th.join();
  }
  std::size_t b = best.load();
  if (b < na) {
    auto [ib, ig] = *found[b];
    rep.witness = AffineLineMap{alphas[b], betas[ib], gammas[ig]};
    rep.candidates_tested = b * per_alpha + ib * gammas.size() + ig + 1;
  } else {
    rep.candidates_tested = na * per_alpha;
  }
  return rep;
}

}  // namespace birconj
