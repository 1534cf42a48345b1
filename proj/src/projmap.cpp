#include "birconj/projmap.hpp"

#include <algorithm>
#include <cctype>

#include "birconj/error.hpp"
#include "birconj/parse.hpp"

namespace birconj {

// ---------------------------------------------------------------- triples

int check_triple(const Triple& t) {
  int d = -1;
  for (const auto& c : t) {
    if (!(c.field() == t[0].field())) throw Error(Errc::FieldMismatch, "components over different fields");
    if (c.is_zero()) continue;
    if (!c.is_homogeneous()) throw Error(Errc::NotHomogeneous, "component " + c.to_string() + " is not homogeneous");
    if (d >= 0 && c.total_degree() != d)
      throw Error(Errc::DegreeMismatch, "components of degrees " + std::to_string(d) + " and " +
                                            std::to_string(c.total_degree()));
    d = c.total_degree();
  }
  if (d < 0) throw Error(Errc::ZeroTriple, "all components vanish");
  return d;
}

Triple reduce_triple(const Triple& t) {
  check_triple(t);
  Field f = t[0].field();
  // Strip the common monomial factor first; it is the usual case and cheap.
  Exponent low{1 << 30, 1 << 30, 1 << 30};
  for (const auto& c : t)
    for (const auto& [e, v] : c.terms())
      for (int i = 0; i < 3; ++i) low[i] = std::min(low[i], e[i]);
  Triple r = t;
  if (low != Exponent{0, 0, 0}) {
    for (auto& c : r) {
      MultiPoly s(f);
      for (const auto& [e, v] : c.terms()) s.add_term({e[0] - low[0], e[1] - low[1], e[2] - low[2]}, v);
      c = std::move(s);
    }
  }
  MultiPoly g = gcd(std::span<const MultiPoly>(r));
  if (!g.is_constant())
    for (auto& c : r) c = *exact_quotient(c, g);
  for (const auto& c : r) {
    if (c.is_zero()) continue;
    FieldElem inv = c.leading_coeff().inverse();
    if (!inv.is_one())
      for (auto& x : r) x = x.scaled(inv);
    break;
  }
  return r;
}

namespace {

Triple substitute_raw(const Triple& g, const Triple& f) {
  return {g[0].substitute(f), g[1].substitute(f), g[2].substitute(f)};
}

}  // namespace

Triple compose(const Triple& g, const Triple& f) {
  Triple raw = substitute_raw(g, f);
  if (raw[0].is_zero() && raw[1].is_zero() && raw[2].is_zero())
    throw Error(Errc::ZeroTriple, "composition vanishes identically");
  return reduce_triple(raw);
}

bool proportional(const Triple& a, const Triple& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (!(a[i] * b[j] - a[j] * b[i]).is_zero()) return false;
  bool az = a[0].is_zero() && a[1].is_zero() && a[2].is_zero();
  bool bz = b[0].is_zero() && b[1].is_zero() && b[2].is_zero();
  return az == bz;
}

Triple identity_triple(Field f) {
  return {MultiPoly::variable(f, kX), MultiPoly::variable(f, kY), MultiPoly::variable(f, kZ)};
}

Triple embedded(const Triple& t, Field target) {
  return {t[0].embedded(target), t[1].embedded(target), t[2].embedded(target)};
}

std::string format_triple(const Triple& t) {
  return "[" + t[0].to_string() + " : " + t[1].to_string() + " : " + t[2].to_string() + "]";
}

// ---------------------------------------------------------------- PglElem

namespace {

FieldElem det3(const PglElem::Matrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

PglElem::PglElem(const Matrix& m) : m_(m) {
  if (det3(m_).is_zero()) throw Error(Errc::NotInvertible, "singular matrix");
  for (const auto& row : m_)
    for (const auto& v : row)
      if (!(v.field() == m_[0][0].field())) throw Error(Errc::FieldMismatch, "matrix entries over different fields");
  for (int i = 0; i < 9; ++i) {
    const FieldElem& v = m_[i / 3][i % 3];
    if (v.is_zero()) continue;
    FieldElem inv = v.inverse();
    for (auto& row : m_)
      for (auto& x : row) x *= inv;
    break;
  }
}

PglElem PglElem::identity(Field f) { return diagonal(f.one(), f.one(), f.one()); }

PglElem PglElem::diagonal(const FieldElem& a, const FieldElem& b, const FieldElem& c) {
  Field f = a.field();
  FieldElem z = f.zero();
  return PglElem(Matrix{Vec3{a, z, z}, Vec3{z, b, z}, Vec3{z, z, c}});
}

PglElem PglElem::permutation(Field f, const std::array<int, 3>& perm) {
  Matrix m{Vec3{f.zero(), f.zero(), f.zero()}, Vec3{f.zero(), f.zero(), f.zero()}, Vec3{f.zero(), f.zero(), f.zero()}};
  for (int i = 0; i < 3; ++i) m[i][perm[i]] = f.one();
  return PglElem(m);
}

PglElem PglElem::from_triple(const Triple& t) {
  Field f = t[0].field();
  Matrix m;
  for (int i = 0; i < 3; ++i) {
    if (t[i].is_zero()) {
      m[i] = Vec3{f.zero(), f.zero(), f.zero()};
      continue;
    }
    m[i] = linear_coeffs(t[i]);
  }
  return PglElem(m);
}

FieldElem PglElem::det() const { return det3(m_); }

PglElem PglElem::inverse() const {
  const auto& a = m_;
  Matrix adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
    }
  return PglElem(adj);
}

PglElem operator*(const PglElem& a, const PglElem& b) {
  PglElem::Matrix r;
  Field f = a.field();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      FieldElem s = f.zero();
      for (int k = 0; k < 3; ++k) s += a.m_[i][k] * b.m_[k][j];
      r[i][j] = s;
    }
  return PglElem(r);
}

Vec3 PglElem::apply_point(const Vec3& p) const {
  Vec3 r;
  for (int i = 0; i < 3; ++i) r[i] = m_[i][0] * p[0] + m_[i][1] * p[1] + m_[i][2] * p[2];
  return normalized(r);
}

Vec3 PglElem::apply_line(const Vec3& l) const {
  const Matrix& inv = inverse().m_;
  Vec3 r;
  for (int j = 0; j < 3; ++j) r[j] = l[0] * inv[0][j] + l[1] * inv[1][j] + l[2] * inv[2][j];
  return normalized(r);
}

Triple PglElem::triple() const { return {linear_poly(m_[0]), linear_poly(m_[1]), linear_poly(m_[2])}; }

PglElem PglElem::embedded(Field target) const {
  Matrix m;
  for (int i = 0; i < 3; ++i) m[i] = birconj::embedded(m_[i], target);
  return PglElem(m);
}

bool PglElem::is_identity() const { return *this == identity(field()); }

std::string PglElem::to_string() const {
  std::string out = "[";
  for (int i = 0; i < 3; ++i) {
    out += i ? ", [" : "[";
    for (int j = 0; j < 3; ++j) out += (j ? ", " : "") + m_[i][j].to_string();
    out += "]";
  }
  return out + "]";
}

// ---------------------------------------------------------------- EndoP2

EndoP2 EndoP2::make(const Triple& t) {
  int d = check_triple(t);
  for (const auto& c : t)
    if (c.is_zero()) throw Error(Errc::NotDominant, "a component vanishes identically");
  if (d < 1) throw Error(Errc::DegreeMismatch, "endomorphism of degree 0");
  if (!gcd(std::span<const MultiPoly>(t)).is_constant())
    throw Error(Errc::CommonFactor, "components share the factor " + gcd(std::span<const MultiPoly>(t)).to_string());
  bool jac_zero = jacobian_det(t[0], t[1], t[2]).is_zero();
  if (jac_zero && t[0].field().is_rational()) throw Error(Errc::NotDominant, "Jacobian determinant vanishes");
  if (!no_common_zero(t)) {
    if (jac_zero) throw Error(Errc::NotDominant, "Jacobian determinant vanishes and components have common zeros");
    throw Error(Errc::NotRegular, "components have a common zero");
  }
  return EndoP2(t, d);
}

EndoP2 EndoP2::embedded(Field target) const { return EndoP2(birconj::embedded(t_, target), d_); }

// ---------------------------------------------------------------- BirMapP2

namespace {

bool is_identity_map(const Triple& t) { return proportional(t, identity_triple(t[0].field())); }

}  // namespace

BirMapP2 BirMapP2::make(const Triple& forward, std::optional<Triple> inverse) {
  check_triple(forward);
  MultiPoly g = gcd(std::span<const MultiPoly>(forward));
  if (!g.is_constant()) throw Error(Errc::CommonFactor, "components share the factor " + g.to_string());
  if (forward[0].field().is_rational() && jacobian_det(forward[0], forward[1], forward[2]).is_zero())
    throw Error(Errc::NotDominant, "Jacobian determinant vanishes");
  if (inverse) {
    check_triple(*inverse);
    if (!is_identity_map(substitute_raw(forward, *inverse)) || !is_identity_map(substitute_raw(*inverse, forward)))
      throw Error(Errc::InvalidInverse, "supplied inverse does not compose to the identity");
    *inverse = reduce_triple(*inverse);
  }
  return BirMapP2(forward, std::move(inverse));
}

BirMapP2 BirMapP2::from_pgl(const PglElem& a) { return BirMapP2(a.triple(), a.inverse().triple()); }

BirMapP2 BirMapP2::inverse() const {
  BirMapP2 w = with_inverse();
  return BirMapP2(*w.inv_, w.fwd_);
}

BirMapP2 BirMapP2::with_inverse() const {
  if (inv_) return *this;
  auto inv = synthesize_inverse(fwd_);
  if (!inv) throw Error(Errc::InverseRequired, "no inverse known for " + format_triple(fwd_));
  return make(fwd_, *inv);
}

std::optional<PglElem> BirMapP2::as_pgl() const {
  if (degree() != 1) return std::nullopt;
  return PglElem::from_triple(fwd_);
}

BirMapP2 BirMapP2::embedded(Field target) const {
  std::optional<Triple> inv;
  if (inv_) inv = birconj::embedded(*inv_, target);
  return BirMapP2(birconj::embedded(fwd_, target), std::move(inv));
}

std::optional<Triple> synthesize_inverse(const Triple& t) {
  int d = check_triple(t);
  Field f = t[0].field();
  if (d == 1) {
    try {
      return PglElem::from_triple(t).inverse().triple();
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  bool monomial = std::all_of(t.begin(), t.end(), [](const MultiPoly& c) { return c.size() == 1; });
  if (monomial) {
    AffinePlaneMap m = AffinePlaneMap::from_triple(t, Chart::Torus);
    const auto& [e1, u] = *m.first().terms().begin();
    const auto& [e2, v] = *m.second().terms().begin();
    int a = e1[0], b = e1[1], c = e2[0], dd = e2[1];
    int det = a * dd - b * c;
    if (det != 1 && det != -1) return std::nullopt;
    // h = t o m with t(x, y) = (u x, v y); h^{-1} = m^{-1} o t^{-1}.
    Laurent2 xs = Laurent2::monomial(u.inverse(), 1, 0), ys = Laurent2::monomial(v.inverse(), 0, 1);
    Laurent2 p = xs.pow(dd * det) * ys.pow(-b * det);
    Laurent2 q = xs.pow(-c * det) * ys.pow(a * det);
    return AffinePlaneMap(Chart::Torus, p, q).to_triple();
  }
  try {
    AffinePlaneMap m = AffinePlaneMap::from_triple(t, Chart::XNonzero);
    if (!m.first().is_monomial() || m.first().terms().begin()->first != Exponent{1, 0, 0}) return std::nullopt;
    FieldElem A = m.first().terms().begin()->second;
    Laurent2 C(f), By(f);
    for (const auto& [e, c] : m.second().terms()) {
      if (e[1] == 0)
        C.add_term(e[0], 0, c);
      else if (e[1] == 1)
        By.add_term(e[0], 1, c);
      else
        return std::nullopt;
    }
    if (!By.is_monomial()) return std::nullopt;
    int mexp = By.terms().begin()->first[0];
    FieldElem B = By.terms().begin()->second;
    // Inverse: (x/A, (y - C(x/A)) / (B (x/A)^m)).
    Laurent2 X = Laurent2::monomial(A.inverse(), 1, 0);
    Laurent2 Y = Laurent2::monomial(f.one(), 0, 1);
    Laurent2 CX = C.substitute(X, Y);
    Laurent2 q = (Y - CX) * (X.pow(mexp).scaled(B)).pow(-1);
    return AffinePlaneMap(Chart::XNonzero, X, q).to_triple();
  } catch (const Error&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------- AffinePlaneMap

std::string_view chart_name(Chart c) {
  switch (c) {
    case Chart::A2: return "a2";
    case Chart::XNonzero: return "xne0";
    case Chart::Torus: return "torus";
  }
  return "a2";
}

AffinePlaneMap::AffinePlaneMap(Chart chart, Laurent2 p, Laurent2 q) : chart_(chart), p_(std::move(p)), q_(std::move(q)) {
  if (!(p_.field() == q_.field())) throw Error(Errc::FieldMismatch, "components over different fields");
  for (const Laurent2* c : {&p_, &q_}) {
    bool bad_x = c->min_exp(0) < 0 && chart_ == Chart::A2;
    bool bad_y = c->min_exp(1) < 0 && chart_ != Chart::Torus;
    if (bad_x || bad_y)
      throw Error(Errc::NotRegularOnChart, c->to_string() + " has a pole on chart " + std::string(chart_name(chart_)));
  }
}

AffinePlaneMap AffinePlaneMap::from_triple(const Triple& t, Chart chart) {
  check_triple(t);
  Field f = t[0].field();
  FieldElem one = f.one();
  std::array<MultiPoly, 3> d;
  for (int i = 0; i < 3; ++i) d[i] = t[i].specialize(kZ, one);
  if (d[2].is_zero()) throw Error(Errc::NotRegularOnChart, "third component vanishes on z = 1");
  // d[2] = c x^a y^b R with R free of monomial factors.
  int a = d[2].terms().begin()->first[0], b = d[2].terms().begin()->first[1];
  for (const auto& [e, c] : d[2].terms()) {
    a = std::min(a, e[0]);
    b = std::min(b, e[1]);
  }
  MultiPoly R(f);
  for (const auto& [e, c] : d[2].terms()) R.add_term({e[0] - a, e[1] - b, 0}, c);
  std::array<Laurent2, 2> out{Laurent2(f), Laurent2(f)};
  for (int i = 0; i < 2; ++i) {
    MultiPoly num = d[i];
    if (!R.is_constant()) {
      auto q = exact_quotient(num, R);
      if (!q) throw Error(Errc::NotRegularOnChart, "denominator " + d[2].to_string() + " is not a unit on the chart");
      num = *q;
    } else {
      num = num.scaled(R.constant_term().inverse());
    }
    out[i] = Laurent2::from_poly(num) * Laurent2::monomial(one, -a, -b);
  }
  return AffinePlaneMap(chart, out[0], out[1]);
}

Triple AffinePlaneMap::to_triple() const {
  Field f = field();
  int a = 0, b = 0, e = 0;
  for (const Laurent2* c : {&p_, &q_})
    for (const auto& [ex, v] : c->terms()) {
      a = std::max(a, -ex[0]);
      b = std::max(b, -ex[1]);
      e = std::max(e, ex[0] + ex[1]);
    }
  auto homog = [&](const Laurent2& c) {
    MultiPoly r(f);
    for (const auto& [ex, v] : c.terms()) r.add_term({ex[0] + a, ex[1] + b, e - ex[0] - ex[1]}, v);
    return r;
  };
  Triple t{homog(p_), homog(q_), MultiPoly::monomial(f.one(), {a, b, e})};
  return reduce_triple(t);
}

AffinePlaneMap AffinePlaneMap::compose(const AffinePlaneMap& g) const {
  Chart c = std::max(chart_, g.chart_);
  return AffinePlaneMap(c, p_.substitute(g.p_, g.q_), q_.substitute(g.p_, g.q_));
}

std::string AffinePlaneMap::to_string() const {
  return "(" + p_.to_string() + ", " + q_.to_string() + ") on chart " + std::string(chart_name(chart_));
}

// ---------------------------------------------------------------- parsing

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == sep && depth == 0) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  parts.push_back(s.substr(start));
  return parts;
}

std::size_t matching_paren(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0) return i;
  }
  return std::string_view::npos;
}

Laurent2 to_laurent2(const LaurentTerms& t, Field f) {
  Laurent2 r(f);
  for (const auto& [e, c] : t) r.add_term(e[0], e[1], c);
  return r;
}

}  // namespace

std::variant<Triple, AffinePlaneMap> parse_map(std::string_view text, Field field) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(Errc::ParseError, "empty map literal");
  if (s.front() == '[') {
    if (s.back() != ']') throw Error(Errc::ParseError, "map literal must end with ']'", s.size());
    auto parts = split_top(s.substr(1, s.size() - 2), ':');
    if (parts.size() != 3) throw Error(Errc::ParseError, "map literal needs three components separated by ':'");
    Triple t{parse_poly(parts[0], field), parse_poly(parts[1], field), parse_poly(parts[2], field)};
    check_triple(t);
    return t;
  }
  if (s.front() == '(') {
    std::size_t close = matching_paren(s, 0);
    if (close == std::string_view::npos) throw Error(Errc::ParseError, "unbalanced parentheses in map literal");
    auto parts = split_top(s.substr(1, close - 1), ',');
    if (parts.size() != 2) throw Error(Errc::ParseError, "affine map literal needs two components separated by ','");
    std::string_view rest = trim(s.substr(close + 1));
    Chart chart = Chart::A2;
    if (!rest.empty()) {
      if (rest.substr(0, 2) != "on") throw Error(Errc::ParseError, "expected 'on chart <a2|xne0|torus>'", close + 1);
      rest = trim(rest.substr(2));
      if (rest.substr(0, 5) == "chart") rest = trim(rest.substr(5));
      if (!rest.empty() && rest.front() == '<' && rest.back() == '>') rest = trim(rest.substr(1, rest.size() - 2));
      if (rest == "a2")
        chart = Chart::A2;
      else if (rest == "xne0")
        chart = Chart::XNonzero;
      else if (rest == "torus")
        chart = Chart::Torus;
      else
        throw Error(Errc::ParseError, "unknown chart '" + std::string(rest) + "'");
    }
    Laurent2 p = to_laurent2(parse_laurent_terms(parts[0], field, "xy"), field);
    Laurent2 q = to_laurent2(parse_laurent_terms(parts[1], field, "xy"), field);
    return AffinePlaneMap(chart, p, q);
  }
  throw Error(Errc::ParseError, "map literal must start with '[' or '('");
}

Triple parse_triple(std::string_view text, Field field) {
  auto v = parse_map(text, field);
  if (auto* t = std::get_if<Triple>(&v)) return *t;
  return std::get<AffinePlaneMap>(v).to_triple();
}

// ---------------------------------------------------------------- conjugacy

bool verify_conjugacy(const Triple& h, const Triple& f1, const Triple& f2) {
  // Proportionality of the unreduced compositions decides equality of maps.
  return proportional(substitute_raw(h, f1), substitute_raw(f2, h));
}

bool verify_conjugacy(const BirMapP2& h, const EndoP2& f1, const EndoP2& f2) {
  return verify_conjugacy(h.forward(), f1.components(), f2.components());
}

bool verify_conjugacy(const PglElem& h, const EndoP2& f1, const EndoP2& f2) {
  return verify_conjugacy(h.triple(), f1.components(), f2.components());
}

EndoP2 act_pgl(const PglElem& a, const EndoP2& f, Side side) {
  Triple t;
  switch (side) {
    case Side::Left: t = compose(a.triple(), f.components()); break;
    case Side::Right: t = compose(f.components(), a.triple()); break;
    case Side::Conjugate: t = compose(a.inverse().triple(), compose(f.components(), a.triple())); break;
  }
  return EndoP2::make(t);
}

BirMapP2 act_pgl(const PglElem& a, const BirMapP2& h, Side side) {
  Triple ai = a.inverse().triple(), at = a.triple();
  Triple fwd;
  std::optional<Triple> inv;
  const auto& hi = h.inverse_triple();
  switch (side) {
    case Side::Left:
      fwd = compose(at, h.forward());
      if (hi) inv = compose(*hi, ai);
      break;
    case Side::Right:
      fwd = compose(h.forward(), at);
      if (hi) inv = compose(ai, *hi);
      break;
    case Side::Conjugate:
      fwd = compose(ai, compose(h.forward(), at));
      if (hi) inv = compose(ai, compose(*hi, at));
      break;
  }
  return BirMapP2::make(fwd, inv);
}

Field extension_of(Field f, unsigned k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "extension degree must be at least 1");
  if (k == 1) return f;
  if (f.is_rational()) throw Error(Errc::InvalidArgument, "extensions of Q are not supported");
  return Field::finite(f.characteristic(), f.extension_degree() * k);
}

// ---------------------------------------------------------------- common zeros

namespace {

void sort_unique(std::vector<Vec3>& pts) {
  std::sort(pts.begin(), pts.end(), line_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

PointSet common_zeros_rational(const Triple& t) {
  Field f = t[0].field();
  FieldElem zero = f.zero(), one = f.one();
  PointSet out{{}, true, f};
  // Points on z = 0.
  std::vector<MultiPoly> atinf;
  for (const auto& c : t) atinf.push_back(c.specialize(kZ, zero));
  MultiPoly g = gcd(atinf);
  if (g.is_zero()) {
    out.complete = false;
  } else if (!g.is_constant()) {
    auto fac = linear_factors(g);
    for (const auto& lf : fac.factors) out.points.push_back(normalized(Vec3{-lf.line[1], lf.line[0], zero}));
    if (!fac.cofactor.is_constant()) out.complete = false;
  }
  // Affine points z = 1: eliminate y.
  std::vector<MultiPoly> aff;
  for (const auto& c : t) {
    MultiPoly a = c.specialize(kZ, one);
    if (!a.is_zero()) aff.push_back(a);
  }
  MultiPoly elim(f);
  auto add_eliminant = [&](const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = (a.uses(kY) || b.uses(kY)) ? resultant(a, b, kY) : gcd(a, b);
    if (!r.is_zero()) elim = gcd(elim, r);
  };
  for (std::size_t i = 0; i < aff.size(); ++i) {
    MultiPoly others(f);
    long lambda = 1;
    for (std::size_t j = 0; j < aff.size(); ++j)
      if (j != i) others += aff[j].scaled(f.from_int(lambda++));
    if (others.is_zero()) continue;
    add_eliminant(aff[i], others);
    MultiPoly others2(f);
    lambda = 2;
    for (std::size_t j = 0; j < aff.size(); ++j)
      if (j != i) others2 += aff[j].scaled(f.from_int(lambda--));
    if (!others2.is_zero()) add_eliminant(aff[i], others2);
  }
  if (aff.size() == 1) elim = aff[0].uses(kY) ? MultiPoly(f) : aff[0];
  if (elim.is_zero()) {
    out.complete = false;
  } else if (!elim.is_constant()) {
    MultiPoly rest = elim;
    for (const auto& r : univariate_roots(elim, kX)) {
      Exponent e{1, 0, 0};
      MultiPoly lin = MultiPoly::monomial(one, e) - MultiPoly::constant(r.value);
      while (auto q = exact_quotient(rest, lin)) rest = *q;
      std::vector<MultiPoly> fiber;
      for (const auto& a : aff) fiber.push_back(a.specialize(kX, r.value));
      MultiPoly gy = gcd(fiber);
      if (gy.is_zero()) {
        out.complete = false;
        continue;
      }
      if (gy.is_constant()) continue;
      int found = 0;
      for (const auto& ry : univariate_roots(gy, kY)) {
        out.points.push_back(normalized(Vec3{r.value, ry.value, one}));
        found += ry.multiplicity;
      }
      if (found < gy.total_degree()) out.complete = false;
    }
    if (!rest.is_constant()) out.complete = false;
  }
  sort_unique(out.points);
  return out;
}

}  // namespace

PointSet common_zeros(const Triple& t, unsigned k) {
  check_triple(t);
  Field f = t[0].field();
  if (f.is_rational()) {
    if (k != 1) throw Error(Errc::InvalidArgument, "extensions of Q are not supported");
    return common_zeros_rational(t);
  }
  Field ext = extension_of(f, k);
  Triple e = embedded(t, ext);
  PointSet out{{}, true, ext};
  for (const auto& p : projective_points(ext)) {
    std::array<FieldElem, 3> pt{p[0], p[1], p[2]};
    if (e[0].evaluate(pt).is_zero() && e[1].evaluate(pt).is_zero() && e[2].evaluate(pt).is_zero())
      out.points.push_back(p);
  }
  sort_unique(out.points);
  return out;
}

PointSet indeterminacy_points(const BirMapP2& h, unsigned k) { return common_zeros(h.forward(), k); }

}  // namespace birconj
