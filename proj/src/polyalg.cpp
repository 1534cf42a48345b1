#include "birconj/polyalg.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>

#include "birconj/error.hpp"

namespace birconj {

// ---------------------------------------------------------------- vectors

bool is_zero(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

Vec3 normalized(const Vec3& v) {
  for (int i = 0; i < 3; ++i) {
    if (v[i].is_zero()) continue;
    FieldElem inv = v[i].inverse();
    return {v[0] * inv, v[1] * inv, v[2] * inv};
  }
  throw Error(Errc::InvalidArgument, "zero vector has no normalization");
}

bool line_less(const Vec3& a, const Vec3& b) {
  auto lead = [](const Vec3& v) {
    for (int i = 0; i < 3; ++i)
      if (!v[i].is_zero()) return i;
    return 3;
  };
  int la = lead(a), lb = lead(b);
  if (la != lb) return la < lb;
  for (int i = 0; i < 3; ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

MultiPoly linear_poly(const Vec3& c) {
  MultiPoly p(c[0].field());
  p.add_term({1, 0, 0}, c[0]);
  p.add_term({0, 1, 0}, c[1]);
  p.add_term({0, 0, 1}, c[2]);
  return p;
}

Vec3 linear_coeffs(const MultiPoly& l) {
  if (l.total_degree() != 1 || !l.is_homogeneous())
    throw Error(Errc::InvalidArgument, "not a linear form: " + l.to_string());
  return {l.coeff({1, 0, 0}), l.coeff({0, 1, 0}), l.coeff({0, 0, 1})};
}

std::string format_point(const Vec3& p) {
  return "[" + p[0].to_string() + ":" + p[1].to_string() + ":" + p[2].to_string() + "]";
}

Vec3 embedded(const Vec3& v, Field target) { return {embed(v[0], target), embed(v[1], target), embed(v[2], target)}; }

// ---------------------------------------------------------------- gcd

namespace {

MultiPoly one_of(Field f) { return MultiPoly::constant(f.one()); }

MultiPoly content_wrt(const MultiPoly& f, int var) {
  MultiPoly g(f.field());
  for (const auto& c : f.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return one_of(f.field());
  }
  return g;
}

MultiPoly primitive_part(const MultiPoly& f, int var) {
  MultiPoly c = content_wrt(f, var);
  if (c.is_constant()) return f;
  return *exact_quotient(f, c);
}

// Images modulo a word-size prime: a certificate that gcd(a, b) is constant.
// If the leading coefficients in v survive the evaluation, the image of the
// primitive integer gcd keeps its degree in v, so a constant image gcd in
// every shared variable proves coprimality. Failure only means "unknown".
using Residues = std::vector<std::uint64_t>;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return std::uint64_t((unsigned __int128)a * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a, p))
    if (e & 1) r = mulmod(r, a, p);
  return r;
}

std::optional<std::uint64_t> reduce_mod(const mpq_class& q, std::uint64_t p) {
  mpz_class pm(static_cast<unsigned long>(p));
  mpz_class den = q.get_den() % pm, num = q.get_num() % pm;
  if (den == 0) return std::nullopt;
  if (num < 0) num += pm;
  return mulmod(num.get_ui(), powmod(den.get_ui(), p - 2, p), p);
}

std::optional<Residues> univariate_image(const MultiPoly& a, int v, const std::array<std::uint64_t, 3>& at,
                                         std::uint64_t p) {
  Residues out(std::size_t(a.degree_in(v)) + 1, 0);
  for (const auto& [e, c] : a.terms()) {
    auto r = reduce_mod(c.rational(), p);
    if (!r) return std::nullopt;
    std::uint64_t t = *r;
    for (int i = 0; i < 3; ++i)
      if (i != v) t = mulmod(t, powmod(at[i], std::uint64_t(e[i]), p), p);
    auto& slot = out[std::size_t(e[v])];
    slot = (slot + t) % p;
  }
  if (out.back() == 0) return std::nullopt;
  return out;
}

std::size_t gcd_degree_mod(Residues a, Residues b, std::uint64_t p) {
  auto trim = [](Residues& r) {
    while (!r.empty() && r.back() == 0) r.pop_back();
  };
  trim(a);
  trim(b);
  while (!b.empty()) {
    if (a.size() >= b.size()) {
      std::uint64_t f = mulmod(a.back(), powmod(b.back(), p - 2, p), p);
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = (a[i + shift] + p - mulmod(f, b[i], p)) % p;
      trim(a);
    } else {
      std::swap(a, b);
    }
  }
  return a.empty() ? 0 : a.size() - 1;
}

bool certainly_coprime(const MultiPoly& a, const MultiPoly& b) {
  static constexpr std::uint64_t primes[] = {2147483647ull, 2147483629ull, 2147483587ull};
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
  for (int v = 0; v < 3; ++v) {
    if (!a.uses(v) || !b.uses(v)) continue;
    bool ok = false;
    for (std::uint64_t p : primes) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      std::array<std::uint64_t, 3> at{(seed >> 11) % p, (seed >> 23) % p, (seed >> 35) % p};
      auto ia = univariate_image(a, v, at, p), ib = univariate_image(b, v, at, p);
      if (!ia || !ib) continue;
      if (gcd_degree_mod(*ia, *ib, p) == 0) ok = true;
      break;
    }
    if (!ok) return false;
  }
  return true;
}

// Sparse pseudo-remainder: R = lc(B)^k A - Q B with deg_var R < deg_var B.
MultiPoly prem(const MultiPoly& a, const MultiPoly& b, int var) {
  auto bc = b.coefficients_in(var);
  int m = int(bc.size()) - 1;
  const MultiPoly& lcb = bc.back();
  MultiPoly r = a;
  while (!r.is_zero() && r.degree_in(var) >= m) {
    int n = r.degree_in(var);
    MultiPoly lcr = r.coefficients_in(var).back();
    Exponent s{0, 0, 0};
    s[var] = n - m;
    r = lcb * r - (lcr * b).shifted(s);
  }
  return r;
}

}  // namespace

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (!(a.field() == b.field())) throw Error(Errc::FieldMismatch, "gcd over different fields");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  int v = -1;
  for (int i = 0; i < 3 && v < 0; ++i)
    if (a.uses(i) || b.uses(i)) v = i;
  if (v < 0) return one_of(a.field());
  if (a.field().is_rational() && certainly_coprime(a, b)) return one_of(a.field());
  if (!a.uses(v)) return gcd(a, content_wrt(b, v));
  if (!b.uses(v)) return gcd(content_wrt(a, v), b);
  MultiPoly ca = content_wrt(a, v), cb = content_wrt(b, v);
  MultiPoly gc = gcd(ca, cb);
  MultiPoly pa = ca.is_constant() ? a : *exact_quotient(a, ca);
  MultiPoly pb = cb.is_constant() ? b : *exact_quotient(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree_in(v) > 0) {
    MultiPoly r = prem(pa, pb, v);
    pa = std::move(pb);
    pb = r.is_zero() ? r : primitive_part(r, v);
  }
  MultiPoly gp = pb.is_zero() ? primitive_part(pa, v) : one_of(a.field());
  return (gc * gp).monic();
}

MultiPoly gcd(std::span<const MultiPoly> ps) {
  if (ps.empty()) return MultiPoly();
  MultiPoly g(ps[0].field());
  for (const auto& p : ps) {
    g = gcd(g, p);
    if (g.is_constant() && !g.is_zero()) return g;
  }
  return g;
}

MultiPoly squarefree_part(const MultiPoly& f) {
  if (f.is_zero() || f.is_constant()) return f;
  std::vector<MultiPoly> ds{f};
  for (int v = 0; v < 3; ++v) {
    MultiPoly d = f.derivative(v);
    if (!d.is_zero()) ds.push_back(d);
  }
  if (ds.size() == 1) return f;
  MultiPoly g = gcd(ds);
  return *exact_quotient(f, g);
}

// ---------------------------------------------------------------- resultant

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, int var) {
  Field fld = a.field();
  if (a.is_zero() || b.is_zero()) return MultiPoly(fld);
  auto ac = a.coefficients_in(var), bc = b.coefficients_in(var);
  int n = int(ac.size()) - 1, m = int(bc.size()) - 1;
  if (n == 0 && m == 0) return one_of(fld);
  if (n == 0) return a.pow(unsigned(m));
  if (m == 0) return b.pow(unsigned(n));
  int sz = n + m;
  std::vector<std::vector<MultiPoly>> mat(sz, std::vector<MultiPoly>(sz, MultiPoly(fld)));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) mat[i][i + k] = ac[n - k];
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) mat[m + i][i + k] = bc[m - k];
  bool negate = false;
  MultiPoly prev = one_of(fld);
  for (int k = 0; k < sz - 1; ++k) {
    if (mat[k][k].is_zero()) {
      int r = k + 1;
      while (r < sz && mat[r][k].is_zero()) ++r;
      if (r == sz) return MultiPoly(fld);
      std::swap(mat[k], mat[r]);
      negate = !negate;
    }
    for (int i = k + 1; i < sz; ++i) {
      for (int j = k + 1; j < sz; ++j) {
        MultiPoly num = mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j];
        mat[i][j] = *exact_quotient(num, prev);
      }
      mat[i][k] = MultiPoly(fld);
    }
    prev = mat[k][k];
  }
  MultiPoly det = mat[sz - 1][sz - 1];
  return negate ? -det : det;
}

MultiPoly jacobian_det(const MultiPoly& f0, const MultiPoly& f1, const MultiPoly& f2) {
  std::array<std::array<MultiPoly, 3>, 3> j;
  const MultiPoly* fs[3] = {&f0, &f1, &f2};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) j[r][c] = fs[r]->derivative(c);
  return j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
         j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
}

// ---------------------------------------------------------------- roots

namespace {

using Dense = std::vector<FieldElem>;  // low to high

Dense to_dense(const MultiPoly& f, int var) {
  Dense d(std::max(f.degree_in(var), 0) + 1, f.field().zero());
  for (const auto& [e, c] : f.terms()) {
    for (int v = 0; v < 3; ++v)
      if (v != var && e[v] != 0) throw Error(Errc::InvalidArgument, "polynomial is not univariate: " + f.to_string());
    d[e[var]] = c;
  }
  return d;
}

FieldElem horner(const Dense& d, const FieldElem& x) {
  FieldElem acc = x.field().zero();
  for (std::size_t i = d.size(); i-- > 0;) acc = acc * x + d[i];
  return acc;
}

// Quotient by (x - r) assuming r is a root.
Dense deflate(const Dense& d, const FieldElem& r) {
  Dense q(d.size() - 1, r.field().zero());
  FieldElem carry = r.field().zero();
  for (std::size_t i = d.size(); i-- > 1;) {
    carry = carry * r + d[i];
    q[i - 1] = carry;
  }
  return q;
}

int multiplicity(Dense d, const FieldElem& r) {
  int k = 0;
  while (d.size() > 1 && horner(d, r).is_zero()) {
    d = deflate(d, r);
    ++k;
  }
  return k;
}

using ZPoly = std::vector<mpz_class>;

mpz_class zeval(const ZPoly& a, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = (acc * x + a[i]) % m;
  if (acc < 0) acc += m;
  return acc;
}

// Degree of gcd(a, a') over F_p, to test squarefreeness modulo p.
bool squarefree_mod(const ZPoly& a, unsigned long p) {
  auto trim = [](std::vector<long>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  auto inv = [p](long x) {
    mpz_class r, xx = x, pp = p;
    mpz_invert(r.get_mpz_t(), xx.get_mpz_t(), pp.get_mpz_t());
    return r.get_si();
  };
  std::vector<long> f(a.size()), g;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_class t = a[i] % p;
    if (t < 0) t += p;
    f[i] = t.get_si();
  }
  trim(f);
  for (std::size_t i = 1; i < f.size(); ++i) g.push_back(long((std::uint64_t(f[i]) * i) % p));
  trim(g);
  while (!g.empty()) {
    // f <- f mod g
    long li = inv(g.back());
    while (f.size() >= g.size()) {
      long c = long((std::uint64_t(f.back()) * std::uint64_t(li)) % p);
      std::size_t shift = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i)
        f[shift + i] = long((std::uint64_t(f[shift + i]) + std::uint64_t(p - c) * std::uint64_t(g[i])) % p);
      trim(f);
      if (f.empty()) break;
    }
    std::swap(f, g);
  }
  return f.size() <= 1;
}

std::vector<FieldElem> rational_simple_roots(const Dense& d, Field fld) {
  // Integer primitive version.
  mpz_class den = 1;
  for (const auto& c : d) den = lcm(den, c.rational().get_den());
  ZPoly z(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    mpq_class t = d[i].rational() * den;
    z[i] = t.get_num();
  }
  mpz_class lc = z.back();
  mpz_class bound = 0;
  for (const auto& c : z) bound = std::max(bound, mpz_class(abs(c)));
  bound += abs(lc);
  unsigned long p = 3;
  for (;; p += 2) {
    if (!mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 25)) continue;
    if (lc % p == 0) continue;
    if (squarefree_mod(z, p)) break;
    if (p > 100000) throw Error(Errc::InvalidArgument, "no suitable prime for root lifting");
  }
  mpz_class mod = p;
  int steps = 0;
  while (mod <= 2 * bound) {
    mod *= mod;
    ++steps;
  }
  ZPoly dz(z.size() > 1 ? z.size() - 1 : 0);
  for (std::size_t i = 1; i < z.size(); ++i) dz[i - 1] = z[i] * long(i);
  std::vector<FieldElem> out;
  for (unsigned long r0 = 0; r0 < p; ++r0) {
    if (zeval(z, r0, p) != 0) continue;
    mpz_class r = r0, m = p;
    for (int s = 0; s < steps; ++s) {
      m *= m;
      mpz_class fv = zeval(z, r, m), dv = zeval(dz, r, m), di;
      mpz_invert(di.get_mpz_t(), dv.get_mpz_t(), m.get_mpz_t());
      r = (r - fv * di) % m;
      if (r < 0) r += m;
    }
    mpz_class c = (lc * r) % mod;
    if (c < 0) c += mod;
    if (c > mod / 2) c -= mod;
    mpq_class cand(c, lc);
    cand.canonicalize();
    FieldElem x = fld.from_rational(cand);
    if (horner(d, x).is_zero()) out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<Root> univariate_roots(const MultiPoly& f, int var) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "roots of the zero polynomial");
  Field fld = f.field();
  Dense d = to_dense(f, var);
  std::vector<Root> out;
  if (d.size() == 1) return out;
  if (fld.is_finite()) {
    for (const auto& x : fld.elements()) {
      if (!horner(d, x).is_zero()) continue;
      out.push_back({x, multiplicity(d, x)});
    }
    return out;
  }
  // Zero root first, then the nonzero rational roots of the squarefree part.
  int zero_mult = 0;
  while (d.size() > 1 && d[0].is_zero()) {
    d.erase(d.begin());
    ++zero_mult;
  }
  if (zero_mult) out.push_back({fld.zero(), zero_mult});
  if (d.size() > 1) {
    MultiPoly g(fld);
    for (std::size_t i = 0; i < d.size(); ++i) {
      Exponent e{0, 0, 0};
      e[var] = int(i);
      g.add_term(e, d[i]);
    }
    Dense sq = to_dense(squarefree_part(g), var);
    for (const auto& r : rational_simple_roots(sq, fld)) out.push_back({r, multiplicity(d, r)});
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
  return out;
}

// ---------------------------------------------------------------- linear factors

namespace {

int divide_out(MultiPoly& g, const MultiPoly& l) {
  int k = 0;
  while (!g.is_constant()) {
    auto q = exact_quotient(g, l);
    if (!q) break;
    g = std::move(*q);
    ++k;
  }
  return k;
}

}  // namespace

LinearFactorization linear_factors(const MultiPoly& f) {
  if (f.is_zero() || !f.is_homogeneous()) throw Error(Errc::InvalidArgument, "linear_factors expects a nonzero form");
  Field fld = f.field();
  LinearFactorization out;
  MultiPoly g = f;
  auto record = [&](const Vec3& line) {
    int k = divide_out(g, linear_poly(line));
    if (k) out.factors.push_back({line, k});
  };
  FieldElem o = fld.one(), z = fld.zero();
  record({o, z, z});
  record({z, o, z});
  record({z, z, o});
  if (!g.is_constant()) {
    // Lines y + c z, c != 0.
    for (const auto& r : univariate_roots(g.specialize(kX, z).specialize(kZ, o), kY))
      if (!r.value.is_zero()) record({z, o, -r.value});
  }
  if (!g.is_constant()) {
    // Lines x + b y + c z with (b, c) != (0, 0).
    std::vector<FieldElem> bs{z}, cs{z};
    for (const auto& r : univariate_roots(g.specialize(kY, o).specialize(kZ, z), kX)) bs.push_back(-r.value);
    for (const auto& r : univariate_roots(g.specialize(kY, z).specialize(kZ, o), kX)) cs.push_back(-r.value);
    for (const auto& b : bs)
      for (const auto& c : cs) {
        if (b.is_zero() && c.is_zero()) continue;
        if (g.is_constant()) break;
        record({o, b, c});
      }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const LinearFactor& a, const LinearFactor& b) { return line_less(a.line, b.line); });
  out.cofactor = g;
  return out;
}

std::vector<Vec3> projective_points(Field f) {
  if (!f.is_finite()) throw Error(Errc::InvalidArgument, "projective_points needs a finite field");
  auto els = f.elements();
  FieldElem o = f.one(), z = f.zero();
  std::vector<Vec3> out;
  for (const auto& b : els)
    for (const auto& c : els) out.push_back({o, b, c});
  for (const auto& c : els) out.push_back({z, o, c});
  out.push_back({z, z, o});
  return out;
}

LinearFactorization linear_factors_exhaustive(const MultiPoly& f) {
  if (f.is_zero() || !f.is_homogeneous()) throw Error(Errc::InvalidArgument, "linear_factors expects a nonzero form");
  LinearFactorization out;
  MultiPoly g = f;
  for (const auto& line : projective_points(f.field())) {
    int k = divide_out(g, linear_poly(line));
    if (k) out.factors.push_back({line, k});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const LinearFactor& a, const LinearFactor& b) { return line_less(a.line, b.line); });
  out.cofactor = g;
  return out;
}

// ---------------------------------------------------------------- linear algebra

std::vector<Exponent> monomials_of_degree(int d) {
  std::vector<Exponent> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  return out;
}

bool no_common_zero(std::span<const MultiPoly> forms) {
  if (forms.size() != 3) throw Error(Errc::InvalidArgument, "no_common_zero expects three forms");
  int d = forms[0].total_degree();
  for (const auto& f : forms)
    if (f.is_zero() || !f.is_homogeneous() || f.total_degree() != d)
      throw Error(Errc::InvalidArgument, "forms must be homogeneous of one degree");
  int target = 3 * d - 2;
  auto cols = monomials_of_degree(target);
  std::map<Exponent, int> index;
  for (std::size_t i = 0; i < cols.size(); ++i) index[cols[i]] = int(i);
  using Row = std::map<int, FieldElem>;
  std::map<int, Row> pivots;
  for (const auto& m : monomials_of_degree(2 * d - 2)) {
    for (const auto& f : forms) {
      Row row;
      for (const auto& [e, c] : f.terms()) row.emplace(index.at({e[0] + m[0], e[1] + m[1], e[2] + m[2]}), c);
      while (!row.empty()) {
        auto [col, lead] = *row.begin();
        auto it = pivots.find(col);
        if (it == pivots.end()) {
          FieldElem inv = lead.inverse();
          for (auto& [k, v] : row) v *= inv;
          pivots.emplace(col, std::move(row));
          break;
        }
        FieldElem factor = lead;
        for (const auto& [k, v] : it->second) {
          auto [slot, inserted] = row.try_emplace(k, -(factor * v));
          if (!inserted) {
            slot->second -= factor * v;
            if (slot->second.is_zero()) row.erase(slot);
          }
        }
      }
      if (pivots.size() == cols.size()) return true;
    }
  }
  return pivots.size() == cols.size();
}

std::vector<std::vector<FieldElem>> nullspace(std::vector<std::vector<FieldElem>> rows, std::size_t ncols, Field f) {
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    FieldElem inv = rows[r][c].inverse();
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      FieldElem k = rows[i][c];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= k * rows[r][j];
    }
    pivot_col.push_back(int(c));
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<FieldElem>> basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<FieldElem> v(ncols, f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace birconj
