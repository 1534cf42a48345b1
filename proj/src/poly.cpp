#include "birconj/poly.hpp"

#include <algorithm>

#include "birconj/error.hpp"
#include "birconj/parse.hpp"

namespace birconj {

namespace {

void check_field(const Field& a, const Field& b) {
  if (!(a == b)) throw Error(Errc::FieldMismatch, "polynomials over " + a.spec() + " and " + b.spec());
}

}  // namespace

// ---------------------------------------------------------------- MultiPoly

MultiPoly MultiPoly::constant(const FieldElem& c) {
  MultiPoly p(c.field());
  p.add_term({0, 0, 0}, c);
  return p;
}

MultiPoly MultiPoly::variable(Field f, int var) {
  Exponent e{0, 0, 0};
  e.at(var) = 1;
  return monomial(f.one(), e);
}

MultiPoly MultiPoly::monomial(const FieldElem& c, const Exponent& e) {
  MultiPoly p(c.field());
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent{0, 0, 0});
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.begin()->first;
  return e[0] + e[1] + e[2];
}

int MultiPoly::min_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return e[0] + e[1] + e[2];
}

int MultiPoly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

bool MultiPoly::is_homogeneous() const { return total_degree() == min_degree(); }

FieldElem MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_.zero() : it->second;
}

const Exponent& MultiPoly::leading_exponent() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "leading term of zero");
  return terms_.begin()->first;
}

const FieldElem& MultiPoly::leading_coeff() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "leading term of zero");
  return terms_.begin()->second;
}

void MultiPoly::add_term(const Exponent& e, const FieldElem& c) {
  check_field(field_, c.field());
  if (e[0] < 0 || e[1] < 0 || e[2] < 0) throw Error(Errc::InvalidArgument, "negative exponent in polynomial");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(field_);
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_field(field_, o.field_);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_field(field_, o.field_);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  check_field(a.field_, b.field_);
  MultiPoly r(a.field_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) { return *this = *this * o; }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.field_ == b.field_ && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::scaled(const FieldElem& c) const {
  check_field(field_, c.field());
  MultiPoly r(field_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, v * c);
  return r;
}

MultiPoly MultiPoly::shifted(const Exponent& s) const {
  MultiPoly r(field_);
  for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), Exponent{e[0] + s[0], e[1] + s[1], e[2] + s[2]}, v);
  return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly acc = constant(field_.one());
  MultiPoly base = *this;
  while (n) {
    if (n & 1) acc *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return acc;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(leading_coeff().inverse());
}

MultiPoly MultiPoly::derivative(int var) const {
  MultiPoly r(field_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent ne = e;
    --ne[var];
    r.add_term(ne, c * field_.from_int(e[var]));
  }
  return r;
}

FieldElem MultiPoly::evaluate(std::span<const FieldElem> point) const {
  if (point.size() != 3) throw Error(Errc::InvalidArgument, "evaluate expects three coordinates");
  FieldElem acc = field_.zero();
  // Cache powers per variable.
  std::array<std::vector<FieldElem>, 3> pw;
  for (int v = 0; v < 3; ++v) {
    check_field(field_, point[v].field());
    pw[v].push_back(field_.one());
  }
  for (const auto& [e, c] : terms_) {
    FieldElem t = c;
    for (int v = 0; v < 3; ++v) {
      while (int(pw[v].size()) <= e[v]) pw[v].push_back(pw[v].back() * point[v]);
      t *= pw[v][e[v]];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> images) const {
  if (images.size() != 3) throw Error(Errc::InvalidArgument, "substitute expects three images");
  for (const auto& im : images) check_field(field_, im.field_);
  std::array<std::vector<MultiPoly>, 3> pw;
  for (int v = 0; v < 3; ++v) pw[v].push_back(constant(field_.one()));
  MultiPoly acc(field_);
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(c);
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      while (int(pw[v].size()) <= e[v]) pw[v].push_back(pw[v].back() * images[v]);
      t *= pw[v][e[v]];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::specialize(int var, const FieldElem& value) const {
  check_field(field_, value.field());
  MultiPoly r(field_);
  std::vector<FieldElem> pw{field_.one()};
  for (const auto& [e, c] : terms_) {
    while (int(pw.size()) <= e[var]) pw.push_back(pw.back() * value);
    Exponent ne = e;
    ne[var] = 0;
    r.add_term(ne, c * pw[e[var]]);
  }
  return r;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(int var) const {
  std::vector<MultiPoly> out(std::max(degree_in(var), 0) + 1, MultiPoly(field_));
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    ne[var] = 0;
    out[e[var]].add_term(ne, c);
  }
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& coeffs, int var, Field f) {
  MultiPoly r(f);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    Exponent s{0, 0, 0};
    s[var] = int(k);
    r += coeffs[k].shifted(s);
  }
  return r;
}

MultiPoly MultiPoly::homogenize(int var, int degree) const {
  MultiPoly r(field_);
  for (const auto& [e, c] : terms_) {
    int d = e[0] + e[1] + e[2];
    if (d > degree) throw Error(Errc::InvalidArgument, "homogenization degree below polynomial degree");
    Exponent ne = e;
    ne[var] += degree - d;
    r.add_term(ne, c);
  }
  return r;
}

MultiPoly MultiPoly::embedded(Field target) const {
  if (target == field_) return *this;
  MultiPoly r(target);
  for (const auto& [e, c] : terms_) r.add_term(e, embed(c, target));
  return r;
}

std::string MultiPoly::to_string() const { return format_poly(*this); }

std::pair<MultiPoly, MultiPoly> divmod(const MultiPoly& f, const MultiPoly& g) {
  check_field(f.field(), g.field());
  if (g.is_zero()) throw Error(Errc::ZeroPolynomial, "division by zero polynomial");
  Field fld = f.field();
  const Exponent lg = g.leading_exponent();
  const FieldElem lc_inv = g.leading_coeff().inverse();
  MultiPoly q(fld), r(fld), p = f;
  while (!p.is_zero()) {
    const Exponent lp = p.leading_exponent();
    const FieldElem cp = p.leading_coeff();
    if (lp[0] >= lg[0] && lp[1] >= lg[1] && lp[2] >= lg[2]) {
      Exponent s{lp[0] - lg[0], lp[1] - lg[1], lp[2] - lg[2]};
      FieldElem c = cp * lc_inv;
      q.add_term(s, c);
      p -= g.shifted(s).scaled(c);
    } else {
      r.add_term(lp, cp);
      p.add_term(lp, -cp);
    }
  }
  return {q, r};
}

std::optional<MultiPoly> exact_quotient(const MultiPoly& f, const MultiPoly& g) {
  if (f.is_zero()) return MultiPoly(f.field());
  if (g.is_zero()) return std::nullopt;
  // Cheap rejections: degrees in each variable and total degree.
  for (int v = 0; v < 3; ++v)
    if (g.degree_in(v) > f.degree_in(v)) return std::nullopt;
  if (g.total_degree() > f.total_degree()) return std::nullopt;
  Field fld = f.field();
  const Exponent lg = g.leading_exponent();
  const FieldElem lc_inv = g.leading_coeff().inverse();
  MultiPoly q(fld), p = f;
  while (!p.is_zero()) {
    const Exponent lp = p.leading_exponent();
    if (lp[0] < lg[0] || lp[1] < lg[1] || lp[2] < lg[2]) return std::nullopt;
    Exponent s{lp[0] - lg[0], lp[1] - lg[1], lp[2] - lg[2]};
    FieldElem c = p.leading_coeff() * lc_inv;
    q.add_term(s, c);
    p -= g.shifted(s).scaled(c);
  }
  return q;
}

// ---------------------------------------------------------------- LaurentPoly

LaurentPoly LaurentPoly::monomial(const FieldElem& c, int e) {
  LaurentPoly p(c.field());
  p.add_term(e, c);
  return p;
}

void LaurentPoly::add_term(int e, const FieldElem& c) {
  check_field(field_, c.field());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FieldElem LaurentPoly::coeff(int e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? field_.zero() : it->second;
}

int LaurentPoly::min_exponent() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "exponent range of zero");
  return terms_.begin()->first;
}

int LaurentPoly::max_exponent() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "exponent range of zero");
  return terms_.rbegin()->first;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  check_field(a.field_, b.field_);
  LaurentPoly r(a.field_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.field_ == b.field_ && a.terms_ == b.terms_;
}

LaurentPoly LaurentPoly::scaled(const FieldElem& c) const {
  LaurentPoly r(field_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * c);
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r(field_);
  for (const auto& [e, v] : terms_) r.terms_.emplace(e + k, v);
  return r;
}

LaurentPoly LaurentPoly::rescaled_variable(const FieldElem& a) const {
  LaurentPoly r(field_);
  for (const auto& [e, v] : terms_) r.add_term(e, v * a.pow(e));
  return r;
}

LaurentPoly LaurentPoly::composed_power(int k) const {
  if (k == 0) throw Error(Errc::InvalidArgument, "composition with x^0");
  LaurentPoly r(field_);
  for (const auto& [e, v] : terms_) r.add_term(e * k, v);
  return r;
}

MultiPoly LaurentPoly::to_poly(int var) const {
  if (!is_polynomial()) throw Error(Errc::InvalidArgument, "Laurent polynomial has negative exponents");
  MultiPoly r(field_);
  for (const auto& [e, v] : terms_) {
    Exponent ex{0, 0, 0};
    ex[var] = e;
    r.add_term(ex, v);
  }
  return r;
}

LaurentPoly LaurentPoly::from_poly(const MultiPoly& p, int var) {
  LaurentPoly r(p.field());
  for (const auto& [e, c] : p.terms()) {
    for (int v = 0; v < 3; ++v)
      if (v != var && e[v] != 0) throw Error(Errc::InvalidArgument, "polynomial is not univariate");
    r.add_term(e[var], c);
  }
  return r;
}

std::string LaurentPoly::to_string() const {
  LaurentTerms t;
  for (const auto& [e, c] : terms_) t.emplace(Exponent{e, 0, 0}, c);
  return format_terms(t, field_);
}

// ---------------------------------------------------------------- Laurent2

Laurent2 Laurent2::monomial(const FieldElem& c, int i, int j) {
  Laurent2 r(c.field());
  r.add_term(i, j, c);
  return r;
}

Laurent2 Laurent2::from_poly(const MultiPoly& p) {
  Laurent2 r(p.field());
  for (const auto& [e, c] : p.terms()) {
    if (e[2] != 0) throw Error(Errc::InvalidArgument, "affine polynomial must not involve z");
    r.add_term(e[0], e[1], c);
  }
  return r;
}

void Laurent2::add_term(int i, int j, const FieldElem& c) {
  check_field(field_, c.field());
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Exponent{i, j, 0}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FieldElem Laurent2::coeff(int i, int j) const {
  auto it = terms_.find(Exponent{i, j, 0});
  return it == terms_.end() ? field_.zero() : it->second;
}

int Laurent2::min_exp(int var) const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first[var];
  for (const auto& [e, c] : terms_) m = std::min(m, e[var]);
  return m;
}

int Laurent2::max_exp(int var) const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first[var];
  for (const auto& [e, c] : terms_) m = std::max(m, e[var]);
  return m;
}

Laurent2& Laurent2::operator+=(const Laurent2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e[0], e[1], c);
  return *this;
}

Laurent2& Laurent2::operator-=(const Laurent2& o) {
  for (const auto& [e, c] : o.terms_) add_term(e[0], e[1], -c);
  return *this;
}

Laurent2 operator*(const Laurent2& a, const Laurent2& b) {
  check_field(a.field_, b.field_);
  Laurent2 r(a.field_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea[0] + eb[0], ea[1] + eb[1], ca * cb);
  return r;
}

bool operator==(const Laurent2& a, const Laurent2& b) { return a.field_ == b.field_ && a.terms_ == b.terms_; }

Laurent2 Laurent2::scaled(const FieldElem& c) const {
  Laurent2 r(field_);
  for (const auto& [e, v] : terms_) r.add_term(e[0], e[1], v * c);
  return r;
}

Laurent2 Laurent2::pow(int n) const {
  if (n < 0) {
    if (!is_monomial()) throw Error(Errc::NotInvertible, "negative power of a non-monomial Laurent polynomial");
    const auto& [e, c] = *terms_.begin();
    return monomial(c.inverse(), -e[0], -e[1]).pow(-n);
  }
  Laurent2 acc = constant(field_.one()), base = *this;
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

Laurent2 Laurent2::substitute(const Laurent2& xi, const Laurent2& yi) const {
  Laurent2 r(field_);
  std::map<int, Laurent2> xp, yp;
  auto power = [](std::map<int, Laurent2>& cache, const Laurent2& base, int k) -> const Laurent2& {
    auto it = cache.find(k);
    if (it == cache.end()) it = cache.emplace(k, base.pow(k)).first;
    return it->second;
  };
  for (const auto& [e, c] : terms_) r += (power(xp, xi, e[0]) * power(yp, yi, e[1])).scaled(c);
  return r;
}

MultiPoly Laurent2::to_poly() const {
  if (!is_polynomial()) throw Error(Errc::InvalidArgument, "Laurent polynomial has negative exponents");
  MultiPoly p(field_);
  for (const auto& [e, c] : terms_) p.add_term(e, c);
  return p;
}

std::string Laurent2::to_string() const {
  LaurentTerms t(terms_.begin(), terms_.end());
  return format_terms(t, field_);
}

}  // namespace birconj
