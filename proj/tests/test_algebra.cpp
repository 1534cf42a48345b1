#include <random>

#include "birconj/error.hpp"
#include "birconj/polyalg.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace birconj;
using testsupport::P;

TEST_CASE("field arithmetic over Q and extensions") {
  Field q = Field::rationals();
  CHECK((q.from_int(3) / q.from_int(6)).to_string() == "1/2");
  Field f9 = Field::parse("F9");
  CHECK(f9.order() == 9);
  CHECK(f9.characteristic() == 3);
  FieldElem t = f9.generator();
  CHECK(t.pow(8).is_one());
  for (const auto& e : f9.elements()) {
    if (e.is_zero()) continue;
    CHECK((e * e.inverse()).is_one());
    CHECK(e.pow(9) == e);
  }
  Field g = Field::parse("F9/t^2+1");
  CHECK(g.modulus() == std::vector<std::uint32_t>{1, 0, 1});
  CHECK((g.generator() * g.generator()) == g.from_int(-1));
  CHECK_THROWS_AS(Field::parse("F6"), Error);
  CHECK_THROWS_AS(Field::parse("F9/t^2+2*t+1"), Error);
}

TEST_CASE("embeddings") {
  Field f3 = Field::finite(3), f9 = Field::finite(3, 2), f81 = Field::finite(3, 4), f27 = Field::finite(3, 3);
  CHECK(embed(f9.from_int(2), f9) == f9.from_int(2));
  CHECK(embed(f3.from_int(2), f9) == f9.from_int(2));
  // The image of t must be a root of the F9 modulus, found here by evaluation.
  FieldElem img = embed(f9.generator(), f81);
  const auto& m = f9.modulus();
  FieldElem acc = f81.zero();
  for (std::size_t i = m.size(); i-- > 0;) acc = acc * img + f81.from_int(long(m[i]));
  CHECK(acc.is_zero());
  // Ring homomorphism on all pairs.
  for (const auto& a : f9.elements())
    for (const auto& b : f9.elements()) {
      CHECK(embed(a * b, f81) == embed(a, f81) * embed(b, f81));
      CHECK(embed(a + b, f81) == embed(a, f81) + embed(b, f81));
    }
  CHECK_THROWS_AS(embed(f9.generator(), f27), Error);
}

TEST_CASE("parse and print") {
  Field q = Field::rationals();
  MultiPoly p = P("x^2*y + 3*z^3");
  CHECK(p.size() == 2);
  CHECK(p.total_degree() == 3);
  CHECK(p.to_string() == "x^2*y + 3*z^3");
  CHECK(P("x/2 - 1/2*x").is_zero());
  Field f9 = Field::finite(3, 2);
  MultiPoly g = parse_poly("y^9 + x*y^3 + (x-1)*y", f9);
  CHECK(g.size() == 4);
  CHECK(g.to_string() == "y^9 + x*y^3 + x*y + 2*y");
  CHECK(parse_poly(g.to_string(), f9) == g);
  CHECK(P("(x-1)*y") == P("x*y - y"));
  CHECK(P("-3/2*x*z + 2").to_string() == "-3/2*x*z + 2");
  MultiPoly withT = parse_poly("(t+1)*x + t^2", f9);
  CHECK(parse_poly(withT.to_string(), f9) == withT);

  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code_of([&] { P("x + w"); }) == Errc::UnknownVariable);
  CHECK(code_of([&] { P("x + * y"); }) == Errc::ParseError);
  CHECK(code_of([&] { parse_poly("1/3*x", Field::finite(3)); }) == Errc::NotRepresentable);
  try {
    P("x + y )");
    FAIL("expected parse error");
  } catch (const Error& e) {
    CHECK(e.position() == 6);
  }
  CHECK(code_of([&] { parse_poly("t*x", Field::finite(5)); }) == Errc::UnknownVariable);
  CHECK(code_of([&] { P("x^-1"); }) == Errc::ParseError);
  CHECK(parse_laurent("5*x^-2 + x + x^-1", q).to_string() == "x + x^-1 + 5*x^-2");
}

TEST_CASE("print-parse round trip on random polynomials") {
  std::mt19937_64 rng(7);
  for (Field f : {Field::rationals(), Field::finite(5), Field::finite(3, 2), Field::finite(2, 3)}) {
    for (int i = 0; i < 40; ++i) {
      MultiPoly p = testsupport::random_form(rng, f, int(rng() % 4)) + testsupport::random_affine(rng, f, 3);
      std::string s = p.to_string();
      MultiPoly back = parse_poly(s, f);
      CHECK(back == p);
      CHECK(back.to_string() == s);
    }
  }
}

TEST_CASE("gcd examples") {
  CHECK(gcd(P("x^2 - y^2"), P("x - y")) == P("x - y"));
  MultiPoly one = P("1");
  std::vector<MultiPoly> cremona{P("y*z"), P("x*z"), P("x*y")};
  CHECK(gcd(cremona) == one);
  CHECK(gcd(MultiPoly(), MultiPoly()).is_zero());
  CHECK(gcd(P("2*x^2*y + 2*x*y"), P("4*x*y^2")) == P("x*y"));
  CHECK(gcd(P("(x+y)^3*(x-z)"), P("(x+y)^2*(x+z)^2")) == P("(x+y)^2"));
}

TEST_CASE("gcd of x*F and x*G for coprime products of lines over F5") {
  // F and G are products of disjoint sets of random lines, so the oracle
  // answer x*gcd(F,G) = x is known by construction; trial division over all
  // 31 lines confirms the factorization of the inputs.
  std::mt19937_64 rng(11);
  Field f5 = Field::finite(5);
  auto lines = projective_points(f5);
  for (int iter = 0; iter < 20; ++iter) {
    std::shuffle(lines.begin(), lines.end(), rng);
    MultiPoly F = MultiPoly::constant(f5.one()), G = F;
    for (int i = 0; i < 3; ++i) F *= linear_poly(lines[i]);
    for (int i = 3; i < 5; ++i) G *= linear_poly(lines[i]);
    MultiPoly x = MultiPoly::variable(f5, kX);
    CHECK(gcd(x * F, x * G) == x);
    auto fac = linear_factors_exhaustive(F);
    int total = 0;
    for (const auto& lf : fac.factors) total += lf.multiplicity;
    CHECK(total == 3);
  }
}

TEST_CASE("gcd properties on random inputs") {
  std::mt19937_64 rng(3);
  for (Field f : {Field::rationals(), Field::finite(5), Field::finite(3, 2)}) {
    for (int i = 0; i < 25; ++i) {
      MultiPoly common = testsupport::random_affine(rng, f, 2);
      if (common.is_zero()) continue;
      MultiPoly a = common * testsupport::random_affine(rng, f, 2);
      MultiPoly b = common * testsupport::random_affine(rng, f, 2);
      MultiPoly g = gcd(a, b);
      if (a.is_zero() && b.is_zero()) continue;
      REQUIRE(!g.is_zero());
      CHECK(divmod(a, g).second.is_zero());
      CHECK(divmod(b, g).second.is_zero());
      CHECK(divides(common.monic(), g));
      if (!a.is_zero() && !b.is_zero())
        CHECK(gcd(*exact_quotient(a, g), *exact_quotient(b, g)).is_constant());
    }
  }
}

TEST_CASE("linear factors examples") {
  auto fac = linear_factors(P("8*x*y*z"));
  REQUIRE(fac.factors.size() == 3);
  CHECK(linear_poly(fac.factors[0].line) == P("x"));
  CHECK(linear_poly(fac.factors[1].line) == P("y"));
  CHECK(linear_poly(fac.factors[2].line) == P("z"));
  CHECK(fac.cofactor == P("8"));

  auto q = linear_factors(P("x^2 + y^2"));
  CHECK(q.factors.empty());
  CHECK(q.cofactor == P("x^2 + y^2"));

  Field f5 = Field::finite(5);
  auto r = linear_factors(parse_poly("x^2 + y^2", f5));
  REQUIRE(r.factors.size() == 2);
  CHECK(linear_poly(r.factors[0].line) == parse_poly("x + 2*y", f5));
  CHECK(linear_poly(r.factors[1].line) == parse_poly("x + 3*y", f5));
  CHECK(r.cofactor.is_constant());

  auto c = linear_factors(P("(x+y+z)^3"));
  REQUIRE(c.factors.size() == 1);
  CHECK(c.factors[0].multiplicity == 3);
  CHECK(c.cofactor == P("1"));

  auto mixed = linear_factors(P("(2*x - 3*y + z)*(y - 5/2*z)^2*(x^2 + y*z + z^2)"));
  REQUIRE(mixed.factors.size() == 2);
  CHECK(linear_poly(mixed.factors[0].line) == P("x - 3/2*y + 1/2*z"));
  CHECK(mixed.factors[1].multiplicity == 2);
}

TEST_CASE("linear factors reconstruct the input and match trial division") {
  std::mt19937_64 rng(5);
  for (Field f : {Field::finite(2), Field::finite(3), Field::finite(5), Field::finite(7), Field::finite(2, 2),
                  Field::finite(3, 2)}) {
    auto lines = projective_points(f);
    for (int i = 0; i < 15; ++i) {
      MultiPoly p = testsupport::random_form(rng, f, 1 + int(rng() % 2));
      for (int k = int(rng() % 3); k > 0; --k) p *= linear_poly(lines[rng() % lines.size()]);
      if (p.is_zero()) continue;
      auto fast = linear_factors(p);
      auto slow = linear_factors_exhaustive(p);
      REQUIRE(fast.factors.size() == slow.factors.size());
      MultiPoly rebuilt = fast.cofactor;
      for (std::size_t j = 0; j < fast.factors.size(); ++j) {
        CHECK(fast.factors[j].line == slow.factors[j].line);
        CHECK(fast.factors[j].multiplicity == slow.factors[j].multiplicity);
        rebuilt *= linear_poly(fast.factors[j].line).pow(unsigned(fast.factors[j].multiplicity));
      }
      CHECK(rebuilt == p);
    }
  }
  Field q = Field::rationals();
  for (int i = 0; i < 20; ++i) {
    MultiPoly p = testsupport::random_form(rng, q, 2);
    for (int k = 1 + int(rng() % 3); k > 0; --k) p *= testsupport::random_form(rng, q, 1, 0.8);
    if (p.is_zero()) continue;
    auto fac = linear_factors(p);
    MultiPoly rebuilt = fac.cofactor;
    for (const auto& lf : fac.factors) rebuilt *= linear_poly(lf.line).pow(unsigned(lf.multiplicity));
    CHECK(rebuilt == p);
    CHECK(linear_factors(fac.cofactor).factors.empty());
  }
}

TEST_CASE("substitute") {
  MultiPoly x = P("x"), y = P("y"), z = P("z");
  std::array<MultiPoly, 3> sq{P("x^2"), P("y^2"), P("z")};
  CHECK(P("x + y").substitute(sq) == P("x^2 + y^2"));
  std::array<MultiPoly, 3> gd{P("x^3"), P("y^3"), P("z^3")};
  CHECK(z.substitute(gd) == P("z^3"));

  Field f9 = Field::finite(3, 2);
  MultiPoly G = parse_poly("x*y^3 + (x-1)*y", f9);
  std::array<MultiPoly, 3> shift{parse_poly("x", f9), parse_poly("y + x^2", f9), parse_poly("z", f9)};
  MultiPoly sub = G.substitute(shift);
  CHECK(sub == parse_poly("x*y^3 + x^7 + (x-1)*y + (x-1)*x^2", f9));
  CHECK(sub.total_degree() == 7);
  // Cross-check by evaluation at random points.
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    std::array<FieldElem, 3> pt{testsupport::random_elem(rng, f9), testsupport::random_elem(rng, f9), f9.one()};
    std::array<FieldElem, 3> img{shift[0].evaluate(pt), shift[1].evaluate(pt), shift[2].evaluate(pt)};
    CHECK(sub.evaluate(pt) == G.evaluate(img));
  }
}

TEST_CASE("substitute is a ring homomorphism") {
  std::mt19937_64 rng(9);
  for (Field f : {Field::rationals(), Field::finite(7)}) {
    for (int i = 0; i < 20; ++i) {
      std::array<MultiPoly, 3> im{testsupport::random_affine(rng, f, 2), testsupport::random_affine(rng, f, 2),
                                  testsupport::random_affine(rng, f, 1)};
      MultiPoly a = testsupport::random_form(rng, f, 2) + testsupport::random_affine(rng, f, 1);
      MultiPoly b = testsupport::random_form(rng, f, 1) + testsupport::random_affine(rng, f, 2);
      CHECK((a + b).substitute(im) == a.substitute(im) + b.substitute(im));
      CHECK((a * b).substitute(im) == a.substitute(im) * b.substitute(im));
    }
  }
}

TEST_CASE("jacobian determinant") {
  CHECK(jacobian_det(P("x^2"), P("y^2"), P("z^2")) == P("8*x*y*z"));
  CHECK(jacobian_det(P("y*z"), P("x*z"), P("x*y")) == P("2*x*y*z"));
  CHECK(jacobian_det(P("x + 2*y"), P("y - z"), P("3*x + z")).is_constant());
  CHECK(jacobian_det(P("x^2"), P("y^2"), P("x*y")).is_zero());
}

TEST_CASE("roots and resultants") {
  auto roots = univariate_roots(P("4*x^3 - 8*x^2 - x + 2"), kX);  // (2x-1)(2x+1)(x-2)
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].value.to_string() == "-1/2");
  CHECK(roots[2].value.to_string() == "2");
  auto rep = univariate_roots(P("x^2*(3*x - 7)^3*(x^2 + 1)"), kX);
  REQUIRE(rep.size() == 2);
  CHECK(rep[0].multiplicity == 2);
  CHECK(rep[1].value.to_string() == "7/3");
  CHECK(rep[1].multiplicity == 3);
  auto big = univariate_roots(P("(1000003*y - 999983)*(y + 123456789)"), kY);
  REQUIRE(big.size() == 2);
  CHECK(big[0].value.to_string() == "-123456789");

  CHECK(resultant(P("y^2 - x"), P("y - x"), kY) == P("x^2 - x"));
  CHECK(resultant(P("y"), P("x + x*y"), kY) == P("x"));
  CHECK(resultant(P("x*y + 1"), P("x*y - 1"), kY) == P("-2*x"));
}

TEST_CASE("common zeros via the Macaulay test") {
  std::vector<MultiPoly> g2{P("x^2"), P("y^2"), P("z^2")};
  CHECK(no_common_zero(g2));
  std::vector<MultiPoly> bad{P("x^2"), P("y^2"), P("x*y")};
  CHECK(!no_common_zero(bad));
  std::vector<MultiPoly> cremona{P("y*z"), P("x*z"), P("x*y")};
  CHECK(!no_common_zero(cremona));
}
