#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "birconj/projmap.hpp"

namespace birconj {

struct ContractedCurve {
  MultiPoly curve;  // monic, squarefree
  Vec3 image;       // normalized
};

/// Curves contracted by a birational map. U_h is the complement of the
/// zero set of `exc_equation`.
struct ExcData {
  std::vector<ContractedCurve> contracted;  // linear curves first, sorted
  MultiPoly exc_equation;                   // product of the contracted curves
  /// False when a nonlinear part of the Jacobian could not be decided.
  bool complete = true;
  std::vector<std::string> warnings;

  /// Normalized coefficient vectors, or nullopt if some curve is not a line.
  std::optional<std::vector<Vec3>> lines() const;
};

/// Image point of {phi = 0} under h when the curve is contracted. Decided by
/// normal forms modulo phi: h_i - (u_i / u_k) h_k must reduce to zero.
std::optional<Vec3> is_contracted(const Triple& h, const MultiPoly& phi);
inline std::optional<Vec3> is_contracted(const BirMapP2& h, const MultiPoly& phi) {
  return is_contracted(h.forward(), phi);
}

ExcData exc_set(const Triple& h);
inline ExcData exc_set(const BirMapP2& h) { return exc_set(h.forward()); }

struct StrictTransform {
  std::optional<Vec3> point;  // set when the line is contracted
  MultiPoly curve;            // implicit equation otherwise (monic)
};

/// Image of the line {l . (x, y, z) = 0} under h.
StrictTransform strict_transform_line(const Triple& h, const Vec3& l);

/// L o f = c L^d for some nonzero constant c.
bool is_totally_invariant_line(const Triple& f, const Vec3& l);

/// Totally invariant lines defined over F_{q^k} (or Q when k = 1), sorted.
/// Candidates are the linear factors of the Jacobian determinant; when the
/// Jacobian vanishes identically every line of P^2(F_{q^k}) is tested.
std::vector<Vec3> invariant_lines(const EndoP2& f, unsigned k = 1);
/// Reference implementation over a finite field: test every line.
std::vector<Vec3> invariant_lines_exhaustive(const EndoP2& f, unsigned k = 1);

enum class ConfigTag { P0, P1, P2, P3 };
std::string_view tag_name(ConfigTag t);

struct LineConfig {
  std::vector<Vec3> lines;  // normalized, sorted by line_less
  ConfigTag tag = ConfigTag::P0;
};

/// Throws NotInClassification for four or more lines or three concurrent
/// lines.
LineConfig classify(const std::vector<Vec3>& lines);

/// f^{-1}(C) = C with full multiplicity: S o f = c S^d for the squarefree
/// part S of the curve. Components may be permuted by f.
bool check_total_invariance(const EndoP2& f, const MultiPoly& curve);

}  // namespace birconj
