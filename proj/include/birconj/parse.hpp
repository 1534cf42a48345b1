#pragma once

#include <map>
#include <string>
#include <string_view>

#include "birconj/field.hpp"
#include "birconj/poly.hpp"

namespace birconj {

/// Sparse Laurent polynomial in x, y, z as produced by the parser before it
/// is narrowed to a polynomial, a bivariate Laurent polynomial or a
/// univariate one. Exponents may be negative.
using LaurentTerms = std::map<Exponent, FieldElem>;

/// Parse an expression over `field` in the variables listed in `vars`
/// (subset of "xyz"). Grammar: sums and differences of products of numbers,
/// variables, parenthesized subexpressions and powers `^k`; `t` denotes the
/// class of t in F_p[t]/(m) when the field is an extension. Division is only
/// allowed by a single nonzero term.
LaurentTerms parse_laurent_terms(std::string_view text, Field field, std::string_view vars = "xyz");

/// Parse a polynomial; negative exponents are rejected.
MultiPoly parse_poly(std::string_view text, Field field, std::string_view vars = "xyz");

/// Parse a univariate Laurent polynomial in x.
LaurentPoly parse_laurent(std::string_view text, Field field);

/// Canonical rendering: grlex terms joined by ` + ` / ` - `, coefficient 1
/// omitted, e.g. `x^2*y - 3/2*z^3`. parse_poly(format_poly(p)) == p.
std::string format_poly(const MultiPoly& p);
std::string format_terms(const LaurentTerms& t, Field field);

}  // namespace birconj
