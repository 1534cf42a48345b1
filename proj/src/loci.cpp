#include "birconj/loci.hpp"

#include <algorithm>
#include <map>

#include "birconj/error.hpp"

namespace birconj {

namespace {

// c * b == a for some nonzero constant c.
bool scalar_multiple(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return false;
  if (a.size() != b.size() || a.leading_exponent() != b.leading_exponent()) return false;
  FieldElem c = a.leading_coeff() / b.leading_coeff();
  return a == b.scaled(c);
}

bool curve_less(const ContractedCurve& a, const ContractedCurve& b) {
  int da = a.curve.total_degree(), db = b.curve.total_degree();
  if (da != db) return da < db;
  if (da == 1) return line_less(linear_coeffs(a.curve), linear_coeffs(b.curve));
  return a.curve.to_string() < b.curve.to_string();
}

}  // namespace

std::optional<std::vector<Vec3>> ExcData::lines() const {
  std::vector<Vec3> out;
  for (const auto& c : contracted) {
    if (c.curve.total_degree() != 1) return std::nullopt;
    out.push_back(normalized(linear_coeffs(c.curve)));
  }
  std::sort(out.begin(), out.end(), line_less);
  return out;
}

std::optional<Vec3> is_contracted(const Triple& h, const MultiPoly& phi) {
  if (phi.is_constant()) throw Error(Errc::InvalidArgument, "curve equation must be nonconstant");
  std::array<MultiPoly, 3> r;
  for (int i = 0; i < 3; ++i) r[i] = divmod(h[i], phi).second;
  int k = -1;
  for (int i = 0; i < 3 && k < 0; ++i)
    if (!r[i].is_zero()) k = i;
  if (k < 0) throw Error(Errc::InvalidArgument, phi.to_string() + " divides every component");
  Field f = phi.field();
  Vec3 u{f.zero(), f.zero(), f.zero()};
  u[k] = f.one();
  for (int i = 0; i < 3; ++i) {
    if (i == k || r[i].is_zero()) continue;
    if (!scalar_multiple(r[i], r[k])) return std::nullopt;
    u[i] = r[i].leading_coeff() / r[k].leading_coeff();
  }
  return normalized(u);
}

ExcData exc_set(const Triple& h) {
  check_triple(h);
  Field f = h[0].field();
  ExcData out;
  auto add = [&](const MultiPoly& curve) {
    MultiPoly c = curve.monic();
    if (auto img = is_contracted(h, c)) out.contracted.push_back({c, *img});
  };
  MultiPoly jac = jacobian_det(h[0], h[1], h[2]);
  if (jac.is_zero()) {
    if (f.is_rational()) throw Error(Errc::NotDominant, "Jacobian determinant vanishes");
    for (const auto& l : projective_points(f)) add(linear_poly(l));
    out.complete = false;
    out.warnings.push_back("Jacobian vanishes identically; only lines were tested");
  } else if (!jac.is_constant()) {
    LinearFactorization lf = linear_factors(jac);
    for (const auto& fac : lf.factors) add(linear_poly(fac.line));
    MultiPoly rest = lf.cofactor.is_constant() ? lf.cofactor : squarefree_part(lf.cofactor);
    if (!rest.is_constant()) {
      if (rest.total_degree() <= 4) {
        std::size_t before = out.contracted.size();
        add(rest);
        if (out.contracted.size() == before) {
          out.complete = false;
          out.warnings.push_back("nonlinear Jacobian factor " + rest.to_string() +
                                 " is not contracted as a whole; its components were not separated");
        }
      } else {
        out.complete = false;
        out.warnings.push_back("nonlinear Jacobian factor of degree " + std::to_string(rest.total_degree()) +
                               " was not tested");
      }
    }
  }
  std::sort(out.contracted.begin(), out.contracted.end(), curve_less);
  out.exc_equation = MultiPoly::constant(f.one());
  for (const auto& c : out.contracted) out.exc_equation = out.exc_equation * c.curve;
  return out;
}

StrictTransform strict_transform_line(const Triple& h, const Vec3& l) {
  check_triple(h);
  Field f = h[0].field();
  if (is_zero(l)) throw Error(Errc::InvalidArgument, "zero linear form");
  auto basis = nullspace({std::vector<FieldElem>(l.begin(), l.end())}, 3, f);
  // Parametrize the line by s P1 + t P2 with s = x, t = y.
  std::array<MultiPoly, 3> param;
  for (int i = 0; i < 3; ++i)
    param[i] = MultiPoly::monomial(basis[0][i], {1, 0, 0}) + MultiPoly::monomial(basis[1][i], {0, 1, 0});
  std::vector<MultiPoly> g;
  for (const auto& c : h) g.push_back(c.substitute(param));
  MultiPoly common = gcd(g);
  if (!common.is_constant())
    for (auto& c : g) c = *exact_quotient(c, common);
  StrictTransform out{std::nullopt, MultiPoly(f)};
  if (std::all_of(g.begin(), g.end(), [](const MultiPoly& c) { return c.is_constant(); })) {
    out.point = normalized(Vec3{g[0].constant_term(), g[1].constant_term(), g[2].constant_term()});
    return out;
  }
  int e = 0;
  for (const auto& c : g)
    if (!c.is_zero()) e = c.total_degree();
  for (int n = 1; n <= e; ++n) {
    auto monos = monomials_of_degree(n);
    std::vector<MultiPoly> images;
    for (const auto& m : monos) images.push_back(g[0].pow(m[0]) * g[1].pow(m[1]) * g[2].pow(m[2]));
    std::map<Exponent, std::size_t, GrlexGreater> row_of;
    for (const auto& im : images)
      for (const auto& [ex, c] : im.terms()) row_of.emplace(ex, 0);
    std::size_t idx = 0;
    for (auto& [ex, r] : row_of) r = idx++;
    std::vector<std::vector<FieldElem>> rows(row_of.size(), std::vector<FieldElem>(monos.size(), f.zero()));
    for (std::size_t j = 0; j < images.size(); ++j)
      for (const auto& [ex, c] : images[j].terms()) rows[row_of[ex]][j] = c;
    auto ker = nullspace(rows, monos.size(), f);
    if (ker.empty()) continue;
    MultiPoly curve(f);
    for (std::size_t j = 0; j < monos.size(); ++j) curve.add_term(monos[j], ker[0][j]);
    out.curve = curve.monic();
    return out;
  }
  throw Error(Errc::InvalidArgument, "implicitization failed");
}

bool is_totally_invariant_line(const Triple& f, const Vec3& l) {
  int d = check_triple(f);
  MultiPoly pull = f[0].scaled(l[0]) + f[1].scaled(l[1]) + f[2].scaled(l[2]);
  return scalar_multiple(pull, linear_poly(l).pow(unsigned(d)));
}

std::vector<Vec3> invariant_lines_exhaustive(const EndoP2& f, unsigned k) {
  Field ext = extension_of(f.field(), k);
  if (ext.is_rational()) throw Error(Errc::InvalidArgument, "exhaustive search needs a finite field");
  Triple t = embedded(f.components(), ext);
  std::vector<Vec3> out;
  for (const auto& l : projective_points(ext))
    if (is_totally_invariant_line(t, l)) out.push_back(l);
  std::sort(out.begin(), out.end(), line_less);
  return out;
}

std::vector<Vec3> invariant_lines(const EndoP2& f, unsigned k) {
  Field ext = extension_of(f.field(), k);
  Triple t = embedded(f.components(), ext);
  MultiPoly jac = jacobian_det(t[0], t[1], t[2]);
  if (jac.is_zero()) return invariant_lines_exhaustive(f, k);
  std::vector<Vec3> out;
  if (jac.is_constant()) return out;
  for (const auto& fac : linear_factors(jac).factors)
    if (is_totally_invariant_line(t, fac.line)) out.push_back(normalized(fac.line));
  std::sort(out.begin(), out.end(), line_less);
  return out;
}

std::string_view tag_name(ConfigTag t) {
  switch (t) {
    case ConfigTag::P0: return "P0";
    case ConfigTag::P1: return "P1";
    case ConfigTag::P2: return "P2";
    case ConfigTag::P3: return "P3";
  }
  return "P0";
}

LineConfig classify(const std::vector<Vec3>& lines) {
  LineConfig out;
  for (const auto& l : lines) {
    if (is_zero(l)) throw Error(Errc::InvalidArgument, "zero linear form");
    out.lines.push_back(normalized(l));
  }
  std::sort(out.lines.begin(), out.lines.end(), line_less);
  out.lines.erase(std::unique(out.lines.begin(), out.lines.end()), out.lines.end());
  if (out.lines.size() > 3)
    throw Error(Errc::NotInClassification,
                std::to_string(out.lines.size()) + " lines; an exceptional set has at most three (P0-P3)");
  if (out.lines.size() == 3) {
    const auto& m = out.lines;
    FieldElem det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det.is_zero()) throw Error(Errc::NotInClassification, "three concurrent lines are not of type P3");
  }
  out.tag = static_cast<ConfigTag>(out.lines.size());
  return out;
}

bool check_total_invariance(const EndoP2& f, const MultiPoly& curve) {
  if (curve.is_constant()) return true;
  if (!curve.is_homogeneous()) throw Error(Errc::NotHomogeneous, "curve equation must be homogeneous");
  MultiPoly c = curve.field() == f.field() ? curve : curve.embedded(f.field());
  MultiPoly s = squarefree_part(c);
  return scalar_multiple(s.substitute(f.components()), s.pow(unsigned(f.degree())));
}

}  // namespace birconj
