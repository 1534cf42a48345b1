#include <random>

#include "birconj/error.hpp"
#include "birconj/loci.hpp"
#include "support.hpp"

using namespace birconj;
using testsupport::P;

namespace {

Triple T(const std::string& s, Field f = Field::rationals()) { return parse_triple(s, f); }

std::string fmt_lines(const std::vector<Vec3>& ls) {
  std::string out;
  for (const auto& l : ls) out += (out.empty() ? "" : ", ") + linear_poly(l).to_string();
  return out;
}

Vec3 L(const std::string& s, Field f = Field::rationals()) { return normalized(linear_coeffs(P(s, f))); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("contraction examples") {
  Triple cr = T("[y*z : x*z : x*y]");
  auto img = is_contracted(cr, P("x"));
  REQUIRE(img);
  CHECK(format_point(*img) == "[1:0:0]");
  CHECK_FALSE(is_contracted(cr, P("x - y")));
  auto img2 = is_contracted(T("(x, x*y)"), P("z"));
  REQUIRE(img2);
  CHECK(format_point(*img2) == "[0:1:0]");
}

TEST_CASE("exceptional sets") {
  ExcData e = exc_set(T("[y*z : x*z : x*y]"));
  CHECK(e.complete);
  REQUIRE(e.lines());
  CHECK(fmt_lines(*e.lines()) == "x, y, z");
  CHECK(e.exc_equation == P("x*y*z"));

  ExcData j = exc_set(T("(x, x*y)"));
  REQUIRE(j.lines());
  CHECK(fmt_lines(*j.lines()) == "x, z");
  CHECK(format_point(j.contracted[0].image) == "[0:0:1]");
  CHECK(format_point(j.contracted[1].image) == "[0:1:0]");

  ExcData lin = exc_set(T("[x + y : y - z : 2*z + x]"));
  CHECK(lin.contracted.empty());
  CHECK(lin.complete);

  // Cremona composed with a linear map contracts the triangle x, y, x+y+z.
  Field Q = Field::rationals();
  PglElem a(PglElem::Matrix{Vec3{Q.one(), Q.zero(), Q.zero()}, Vec3{Q.zero(), Q.one(), Q.zero()},
                            Vec3{Q.one(), Q.one(), Q.one()}});
  Triple moved = compose(T("[y*z : x*z : x*y]"), a.triple());
  ExcData m = exc_set(moved);
  REQUIRE(m.lines());
  CHECK(fmt_lines(*m.lines()) == "x, x + y + z, y");
}

TEST_CASE("strict transforms") {
  Triple cr = T("[y*z : x*z : x*y]");
  StrictTransform s = strict_transform_line(cr, L("x - y"));
  CHECK_FALSE(s.point);
  CHECK(s.curve == P("x - y"));
  StrictTransform c = strict_transform_line(cr, L("z - x - y"));
  CHECK_FALSE(c.point);
  CHECK(c.curve.total_degree() == 2);
  // Points of the line map onto the conic.
  for (long t = -3; t <= 3; ++t) {
    Field Q = Field::rationals();
    std::array<FieldElem, 3> pt{Q.from_int(t), Q.from_int(t + 5), Q.from_int(2 * t + 5)};
    std::array<FieldElem, 3> im{cr[0].evaluate(pt), cr[1].evaluate(pt), cr[2].evaluate(pt)};
    CHECK(c.curve.evaluate(im).is_zero());
  }
  StrictTransform p = strict_transform_line(cr, L("x"));
  REQUIRE(p.point);
  CHECK(format_point(*p.point) == "[1:0:0]");
}

TEST_CASE("invariant lines") {
  EndoP2 g3 = EndoP2::make(T("[x^3 : y^3 : z^3]"));
  CHECK(fmt_lines(invariant_lines(g3)) == "x, y, z");

  Field F9 = Field::finite(3, 2);
  EndoP2 f1 = EndoP2::make(T("[x^9 : y^9 + x*y^3*z^5 + (x - z)*y*z^7 : z^9]", F9));
  auto lines = invariant_lines(f1);
  CHECK(lines.size() == 10);
  for (const auto& l : lines) {
    // Every line passes through [0:1:0].
    CHECK(l[1].is_zero());
  }
  CHECK(check_total_invariance(f1, P("z", F9)));

  for (unsigned p : {5u, 7u}) {
    Field F = Field::finite(p, 1);
    std::mt19937_64 rng(p);
    int done = 0;
    while (done < 10) {
      Triple t{testsupport::random_form(rng, F, 2, 0.4), testsupport::random_form(rng, F, 2, 0.4),
               testsupport::random_form(rng, F, 2, 0.4)};
      std::optional<EndoP2> e;
      try {
        e = EndoP2::make(t);
      } catch (const Error&) {
        continue;
      }
      CHECK(fmt_lines(invariant_lines(*e)) == fmt_lines(invariant_lines_exhaustive(*e)));
      ++done;
    }
  }
}

TEST_CASE("classification") {
  CHECK(classify({}).tag == ConfigTag::P0);
  CHECK(classify({L("z")}).tag == ConfigTag::P1);
  LineConfig c = classify({L("z"), L("x"), L("2*x")});
  CHECK(c.tag == ConfigTag::P2);
  CHECK(fmt_lines(c.lines) == "x, z");
  CHECK(classify({L("x"), L("y"), L("x + y + z")}).tag == ConfigTag::P3);
  CHECK(code_of([] { classify({L("x"), L("y"), L("x + y")}); }) == Errc::NotInClassification);
  CHECK(code_of([] { classify({L("x"), L("y"), L("z"), L("x + y + z")}); }) == Errc::NotInClassification);
}

TEST_CASE("total invariance") {
  EndoP2 g2 = EndoP2::make(T("[x^2 : y^2 : z^2]"));
  CHECK(check_total_invariance(g2, P("x*y*z")));
  CHECK_FALSE(check_total_invariance(g2, P("x + y")));
  CHECK(check_total_invariance(g2, P("x^2*y")));
  // A permutation composed with g_2 swaps x and y; only the union is invariant.
  EndoP2 s = EndoP2::make(T("[y^2 : x^2 : z^2]"));
  CHECK(check_total_invariance(s, P("x*y")));
  CHECK_FALSE(check_total_invariance(s, P("x")));
}
