#include "fixtures.hpp"

#include <algorithm>

#include "birconj/error.hpp"
#include "birconj/parse.hpp"

namespace fixtures {

namespace {

FieldElem small_elem(std::mt19937_64& rng, Field f, bool nonzero) {
  for (;;) {
    FieldElem e = f.is_finite() ? f.from_index(std::uint32_t(rng() % f.order())) : f.from_int(long(rng() % 5) - 2);
    if (!nonzero || !e.is_zero()) return e;
  }
}

FieldElem random_sign(std::mt19937_64& rng, Field f) { return rng() % 2 ? f.one() : -f.one(); }

MultiPoly form(std::mt19937_64& rng, Field f, int d) {
  MultiPoly p(f);
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b)
      if (rng() % 3) p.add_term({a, b, d - a - b}, small_elem(rng, f, false));
  return p;
}

BirMapP2 jonquieres(const FieldElem& A, const FieldElem& B, int m) {
  JonquieresData j{A, B, m, LaurentPoly(A.field())};
  return BirMapP2::make(j.recompose().to_triple()).with_inverse();
}

Triple power_map(Field f, int d) {
  Triple t{MultiPoly(f), MultiPoly(f), MultiPoly(f)};
  for (int i = 0; i < 3; ++i) {
    Exponent e{0, 0, 0};
    e[i] = d;
    t[i] = MultiPoly::monomial(f.one(), e);
  }
  return t;
}

/// (x^d, y^d + sum_j a_j x^{sj} y^{d-j}) on the plane chart.
EndoP2 fibered(Field f, int d, const std::vector<FieldElem>& a, int s) {
  MultiPoly y_part = MultiPoly::monomial(f.one(), {0, d, 0});
  for (int j = 2; j <= d; ++j) y_part += MultiPoly::monomial(a[j - 2], {s * j, d - j, 0});
  AffinePlaneMap m(Chart::A2, Laurent2::monomial(f.one(), d, 0), Laurent2::from_poly(y_part));
  return EndoP2::make(m.to_triple());
}

EndoP2 permuted_power(Field f, int d, const std::array<int, 3>& perm) {
  return EndoP2::make(compose(PglElem::permutation(f, perm).triple(), power_map(f, d)));
}

}  // namespace

PglElem random_pgl(std::mt19937_64& rng, Field f) {
  for (;;) {
    PglElem::Matrix m;
    for (auto& row : m)
      for (auto& v : row) v = small_elem(rng, f, false);
    try {
      return PglElem(m);
    } catch (const Error&) {
    }
  }
}

EndoP2 random_endo(std::mt19937_64& rng, Field f, int d) {
  for (;;) {
    try {
      return EndoP2::make(form(rng, f, d), form(rng, f, d), form(rng, f, d));
    } catch (const Error&) {
    }
  }
}

Fixture moved(const Fixture& base, const PglElem& r1, const PglElem& r2, const std::string& suffix) {
  BirMapP2 h = base.h.with_inverse();
  Triple fwd = compose(r2.inverse().triple(), compose(h.forward(), r1.triple()));
  Triple inv = compose(r1.inverse().triple(), compose(*h.inverse_triple(), r2.triple()));
  return Fixture{base.name + suffix, act_pgl(r1, base.f1, Side::Conjugate), act_pgl(r2, base.f2, Side::Conjugate),
                 BirMapP2::make(fwd, inv), base.expected};
}

std::vector<Fixture> conjugate_fixtures(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Fixture> out;
  auto push_moved = [&](const Fixture& base) {
    Field f = base.f1.field();
    out.push_back(moved(base, random_pgl(rng, f), random_pgl(rng, f), " moved"));
  };
  const auto& s3 = s3_elements();
  for (Field f : {Field::rationals(), Field::finite(5)}) {
    for (int d : {2, 3}) {
      std::string tag = " " + f.spec() + " d=" + std::to_string(d);
      // Roots of unity of order dividing d - 1.
      auto unit = [&] { return d == 2 ? f.one() : random_sign(rng, f); };

      for (int i = 0; i < 2; ++i) {
        EndoP2 g = random_endo(rng, f, d);
        PglElem a = random_pgl(rng, f);
        out.push_back({"P0 random" + tag, g, act_pgl(a.inverse(), g, Side::Conjugate), BirMapP2::from_pgl(a),
                       ConfigTag::P0});
      }

      std::vector<FieldElem> coeffs;
      do {
        coeffs.clear();
        for (int j = 2; j <= d; ++j) coeffs.push_back(small_elem(rng, f, false));
      } while (std::all_of(coeffs.begin(), coeffs.end(), [](const FieldElem& c) { return c.is_zero(); }));
      FieldElem A = unit(), B = unit();
      std::vector<FieldElem> twisted;
      for (int j = 2; j <= d; ++j) twisted.push_back(coeffs[j - 2] * (B / A).pow(j));
      EndoP2 f_const = fibered(f, d, coeffs, 0), f_lin = fibered(f, d, twisted, 1);
      Fixture b1{"P2 m=1" + tag, f_const, f_lin, jonquieres(A, B, 1), ConfigTag::P2};
      push_moved(b1);
      Fixture bm{"P2 m=-1" + tag, f_lin, f_const, b1.h.inverse(), ConfigTag::P2};
      push_moved(bm);
      EndoP2 pw = EndoP2::make(power_map(f, d));
      Fixture a2{"P2 power m=" + std::to_string(d == 2 ? 2 : -2) + tag, pw, pw,
                 jonquieres(unit(), unit(), d == 2 ? 2 : -2), ConfigTag::P2};
      push_moved(a2);

      // f1 = perm o g_d and h a torus automorphism normalizing S3. With extra
      // diagonal scalars in f1 a linear conjugator may need roots outside
      // the field.
      for (int i = 0; i < 3; ++i) {
        const PermMatrix& p1 = s3[i == 0 ? 0 : (i == 1 ? 3 : 1 + rng() % 5)];
        IntMat2 M = i == 0 ? -IntMat2::identity() : -s3[rng() % 6].M;
        EndoP2 g1 = i == 0 ? pw : permuted_power(f, d, p1.perm);
        MonomialData md{i == 0 ? f.one() : small_elem(rng, f, true), i == 0 ? f.one() : small_elem(rng, f, true), M};
        BirMapP2 h = BirMapP2::make(md.recompose().to_triple()).with_inverse();
        EndoP2 g2 = EndoP2::make(compose(h.forward(), compose(g1.components(), *h.inverse_triple())));
        Fixture base{"P3 " + p1.label + " M=" + M.to_string() + tag, g1, g2, h, ConfigTag::P3};
        push_moved(base);
      }
    }
  }
  return out;
}

}  // namespace fixtures
