#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "birconj/field.hpp"
#include "birconj/poly.hpp"

namespace birconj {

/// Coefficient vector of a linear form, or homogeneous coordinates of a
/// point. Canonical representatives have their first nonzero entry equal
/// to 1.
using Vec3 = std::array<FieldElem, 3>;

bool is_zero(const Vec3& v);
Vec3 normalized(const Vec3& v);
/// Lines containing x come first, then y-lines, then z; ties by coefficients.
bool line_less(const Vec3& a, const Vec3& b);
MultiPoly linear_poly(const Vec3& coeffs);
/// Throws InvalidArgument unless l is a nonzero linear form.
Vec3 linear_coeffs(const MultiPoly& l);
std::string format_point(const Vec3& p);
Vec3 embedded(const Vec3& v, Field target);

/// Monic gcd (leading coefficient 1 under grlex); gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
MultiPoly gcd(std::span<const MultiPoly> ps);

/// Product of the distinct irreducible factors (up to a constant). In
/// characteristic p, factors whose partial derivatives all vanish are kept
/// with their multiplicity.
MultiPoly squarefree_part(const MultiPoly& f);

/// Sylvester resultant with respect to `var`, computed by fraction-free
/// elimination over the remaining variables.
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, int var);

MultiPoly jacobian_det(const MultiPoly& f0, const MultiPoly& f1, const MultiPoly& f2);

struct Root {
  FieldElem value;
  int multiplicity;
};

/// Roots in the coefficient field of a nonzero polynomial involving at most
/// the single variable `var`, sorted. Over Q the rational roots are found by
/// p-adic lifting and checked exactly; over F_q by evaluation at every
/// element.
std::vector<Root> univariate_roots(const MultiPoly& f, int var);

struct LinearFactor {
  Vec3 line;
  int multiplicity;
};

struct LinearFactorization {
  std::vector<LinearFactor> factors;  // sorted by line_less
  MultiPoly cofactor;
};

/// Linear factors over the coefficient field of a nonzero homogeneous
/// polynomial. Candidates come from the roots of the restrictions to the
/// lines z = 0 and x = 0, and each is confirmed by exact division.
LinearFactorization linear_factors(const MultiPoly& f);

/// Reference implementation for finite fields: trial division by all
/// q^2 + q + 1 normalized linear forms.
LinearFactorization linear_factors_exhaustive(const MultiPoly& f);

/// All normalized lines (equivalently points) of P^2 over a finite field.
std::vector<Vec3> projective_points(Field f);

/// True iff three forms of a common degree d have no common zero over the
/// algebraic closure: their ideal must contain every monomial of degree
/// 3d - 2.
bool no_common_zero(std::span<const MultiPoly> forms);

/// Basis of the right kernel of a matrix given by rows.
std::vector<std::vector<FieldElem>> nullspace(std::vector<std::vector<FieldElem>> rows, std::size_t ncols, Field f);

/// Every exponent vector of total degree d in three variables, grlex order.
std::vector<Exponent> monomials_of_degree(int d);

}  // namespace birconj
