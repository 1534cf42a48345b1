#pragma once

#include <random>
#include <string>

#include "birconj/field.hpp"
#include "birconj/parse.hpp"
#include "birconj/poly.hpp"

namespace testsupport {

using namespace birconj;

inline MultiPoly P(const std::string& s, Field f = Field::rationals()) { return parse_poly(s, f); }

inline FieldElem random_elem(std::mt19937_64& rng, Field f, bool nonzero = false) {
  for (;;) {
    FieldElem e = f.is_finite() ? f.from_index(std::uint32_t(rng() % f.order()))
                                : f.from_rational(mpq_class(long(rng() % 11) - 5, long(rng() % 3) + 1));
    if (!nonzero || !e.is_zero()) return e;
  }
}

/// Random homogeneous form of degree d with roughly `density` of the
/// monomials present.
inline MultiPoly random_form(std::mt19937_64& rng, Field f, int d, double density = 0.6) {
  std::bernoulli_distribution keep(density);
  MultiPoly p(f);
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b)
      if (keep(rng)) p.add_term({a, b, d - a - b}, random_elem(rng, f));
  return p;
}

/// Random polynomial of total degree at most d in the variables x, y.
inline MultiPoly random_affine(std::mt19937_64& rng, Field f, int d, double density = 0.5) {
  std::bernoulli_distribution keep(density);
  MultiPoly p(f);
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b)
      if (keep(rng)) p.add_term({a, b, 0}, random_elem(rng, f));
  return p;
}

}  // namespace testsupport

#include "doctest.h"

namespace doctest {
template <>
struct StringMaker<birconj::MultiPoly> {
  static String convert(const birconj::MultiPoly& p) { return p.to_string().c_str(); }
};
template <>
struct StringMaker<birconj::FieldElem> {
  static String convert(const birconj::FieldElem& e) { return e.to_string().c_str(); }
};
}  // namespace doctest
