#include <chrono>

#include "birconj/charplab.hpp"
#include "birconj/error.hpp"
#include "support.hpp"

using namespace birconj;

namespace {

CharPConfig config(std::uint32_t p, unsigned s, const std::string& P, unsigned k = 1) {
  return CharPConfig{p, s, parse_poly(P, Field::finite(p, s)), k};
}

AffinePlaneMap affine(const EndoP2& f) { return AffinePlaneMap::from_triple(f.components(), Chart::A2); }

std::optional<Errc> code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("counterexample construction") {
  Counterexample c = build_counterexample(config(3, 2, "x^2"));
  Field F9 = c.field;
  CHECK(affine(c.f1) == std::get<AffinePlaneMap>(parse_map("(x^9, y^9 + x*y^3 + x*y - y)", F9)));
  CHECK(c.G.total_degree() == 4);
  CHECK(c.G_shifted.total_degree() == 7);
  CHECK(affine(c.f2).second().to_poly() ==
        parse_poly("y^9", F9) + c.G.substitute(std::vector<MultiPoly>{parse_poly("x", F9), parse_poly("y + x^2", F9),
                                                                      parse_poly("z", F9)}));
  CHECK(c.f1.degree() == 9);
  CHECK(c.f2.degree() == 9);
  CHECK(verify_g_conjugacy(c.f1, c.f2, c.g));
  CHECK_FALSE(verify_g_conjugacy(c.f1, c.f1, c.g));

  Triple tampered = c.f2.components();
  tampered[1] += MultiPoly::monomial(F9.one(), {1, 0, 8});
  CHECK_FALSE(verify_g_conjugacy(c.f1, EndoP2::make(tampered), c.g));

  for (const char* P : {"x^2", "x^3", "x^3 + x^2 + 1"}) {
    Counterexample c8 = build_counterexample(config(2, 3, P));
    CHECK(verify_g_conjugacy(c8.f1, c8.f2, c8.g));
  }
  for (const char* P : {"x^2 + t*x", "t*x^2 + 1", "x^2 - x"}) {
    Counterexample c9 = build_counterexample(config(3, 2, P));
    CHECK(verify_g_conjugacy(c9.f1, c9.f2, c9.g));
  }
  CHECK(code_of([] { build_counterexample(config(2, 2, "x^2")); }) == Errc::DegreeBoundViolated);
  CHECK(code_of([] { build_counterexample(config(3, 2, "x^3")); }) == Errc::DegreeBoundViolated);
  CHECK(code_of([] { build_counterexample(config(3, 2, "x")); }) == Errc::DegreeBoundViolated);
  CHECK(code_of([] { build_counterexample(config(3, 1, "x^2")); }) == Errc::DegreeBoundViolated);
  CHECK(code_of([] { build_counterexample(config(3, 2, "x^2 + y")); }) == Errc::InvalidArgument);
}

TEST_CASE("line dynamics on the pencil") {
  Counterexample c = build_counterexample(config(3, 2, "x^2"));
  Field F9 = c.field;
  LineDynamics l0 = line_dynamics(c.f1, F9.zero());
  CHECK(l0.restriction == parse_poly("y^9 - y", F9));
  CHECK(l0.tag == LineClass::Additive);
  LineDynamics l1 = line_dynamics(c.f1, F9.one());
  CHECK(l1.restriction == parse_poly("y^9 + y^3", F9));
  CHECK(l1.tag == LineClass::Mixed);
  LineDynamics li = line_dynamics(c.f1, std::nullopt);
  CHECK(li.restriction == parse_poly("y^9", F9));
  CHECK(li.tag == LineClass::Power);
  CHECK(line_dynamics(c.f2, std::nullopt).tag == LineClass::Power);
  CHECK(code_of([&] { line_dynamics(EndoP2::make(parse_triple("[y^2 : x^2 : z^2]", F9)), F9.one()); }) ==
        Errc::InvalidArgument);
}

TEST_CASE("affine conjugacy of one-variable maps") {
  Field F9 = Field::finite(3, 2);
  auto Y = [&](const std::string& s) { return parse_poly(s, F9); };
  auto w = affine_conjugacy_1d(Y("y^9 - y"), Y("y^9 - y"));
  REQUIRE(w);
  CHECK(w->first == F9.one());
  CHECK(w->second == F9.zero());
  CHECK_FALSE(affine_conjugacy_1d(Y("y^9"), Y("y^9 - y"), 2));
  CHECK_FALSE(affine_conjugacy_1d(Y("y^9 + y^3"), Y("y^9 - y"), 2));

  // y -> y + b conjugates u to u + c when c = b - u(b) for additive u.
  FieldElem b = F9.generator();
  FieldElem c = b - b.pow(9) - b.pow(3);
  MultiPoly u = Y("y^9 + y^3"), v = u + MultiPoly::constant(c);
  auto wc = affine_conjugacy_1d(u, v);
  REQUIRE(wc);
  auto [al, be] = *wc;
  std::vector<MultiPoly> img{Y("x"), Y("y").scaled(al) + MultiPoly::constant(be), Y("z")};
  CHECK(u.scaled(al) + MultiPoly::constant(be) == v.substitute(img));
}

TEST_CASE("uniqueness bullets") {
  Counterexample c = build_counterexample(config(3, 2, "x^2"));
  for (const EndoP2* f : {&c.f1, &c.f2})
    for (unsigned k : {1u, 2u}) {
      BulletsReport r = uniqueness_bullets(*f, k);
      CHECK(r.matches[0] == std::vector<PencilParam>{std::nullopt});
      CHECK(r.matches[1] == std::vector<PencilParam>{c.field.zero()});
      CHECK(r.matches[2] == std::vector<PencilParam>{c.field.one()});
    }
  Counterexample c8 = build_counterexample(config(2, 3, "x^3"));
  CHECK_NOTHROW(uniqueness_bullets(c8.f1, 2));
  CHECK_NOTHROW(uniqueness_bullets(c8.f2, 2));
  EndoP2 plain = EndoP2::make(parse_triple("[x^9 : y^9 : z^9]", c.field));
  CHECK(code_of([&] { uniqueness_bullets(plain); }) == Errc::UniquenessFailed);
}

TEST_CASE("invariant lines form the pencil") {
  Counterexample c = build_counterexample(config(3, 2, "x^2"));
  for (const EndoP2* f : {&c.f1, &c.f2}) {
    auto ls = invariant_lines(*f, 1);
    CHECK(ls.size() == 10);
    for (const auto& l : ls) CHECK(l[1].is_zero());
  }
  Counterexample c8 = build_counterexample(config(2, 3, "x^3"));
  CHECK(invariant_lines(c8.f1, 1).size() == 9);
}

TEST_CASE("linear conjugator search") {
  Counterexample c = build_counterexample(config(3, 2, "x^2"));
  SearchReport r = search_linear_conjugator(c.f1, c.f2, 1);
  CHECK_FALSE(r.witness);
  CHECK(r.invariant_lines_f1 == 10);
  CHECK(r.candidates_total == 8 * 81);
  CHECK(r.candidates_tested == 8 * 81);

  SearchReport ctl = search_linear_conjugator(c.f1, c.f1, 1);
  REQUIRE(ctl.witness);
  CHECK(ctl.witness->as_pgl().is_identity());
  CHECK(ctl.candidates_tested == 1);

  SearchReport par = search_linear_conjugator(c.f1, c.f2, 1, 4);
  CHECK_FALSE(par.witness);
  CHECK(par.candidates_tested == r.candidates_tested);
  SearchReport ctl4 = search_linear_conjugator(c.f2, c.f2, 1, 3);
  REQUIRE(ctl4.witness);
  CHECK(ctl4.witness->as_pgl().is_identity());

  Counterexample c8 = build_counterexample(config(2, 3, "x^3"));
  CHECK_FALSE(search_linear_conjugator(c8.f1, c8.f2, 1).witness);
  CHECK(search_linear_conjugator(c8.f2, c8.f2, 1).witness);

  // The degree-q pruning loses nothing: the full space over F_81 is empty too.
  SearchReport full = search_linear_conjugator(c.f1, c.f2, 2, 2, false);
  CHECK_FALSE(full.witness);
  CHECK(full.candidates_tested == full.candidates_total);
  CHECK_FALSE(search_linear_conjugator(c.f1, c.f2, 2).witness);
}
