#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "birconj/loci.hpp"
#include "birconj/projmap.hpp"

namespace birconj {

/// q = p^s with s >= 2 and P in F_q[x] with 2 <= deg P <= q/p - 1.
struct CharPConfig {
  std::uint32_t p = 3;
  unsigned s = 2;
  MultiPoly P;  // in x, over Field::finite(p, s)
  unsigned k = 1;

  std::uint32_t q() const;
};

/// f1 = (x^q, y^q + G), f2 = g o f1 o g^{-1} with G = x y^p + (x - 1) y and
/// g = (x, y - P(x)).
struct Counterexample {
  CharPConfig config;
  Field field;
  MultiPoly G, G_shifted;  // G(x, y) and G(x, y + P(x))
  EndoP2 f1, f2;
  AffinePlaneMap g, g_inv;
};

/// Errors: DegreeBoundViolated (s < 2, deg P out of range, or the degree
/// chain deg G < deg G(x, y + P) < q fails), InvalidArgument (P not in x
/// alone or over the wrong field), TheoremViolation (the symbolic f2
/// differs from the closed form).
Counterexample build_counterexample(const CharPConfig& cfg);

/// g o f1 = f2 o g as maps of the plane.
bool verify_g_conjugacy(const EndoP2& f1, const EndoP2& f2, const AffinePlaneMap& g);

enum class LineClass { Power, Additive, Mixed, Other };
std::string_view line_class_name(LineClass c);

/// Parameter of a line through [0:1:0]: a for {x = a z}, nullopt for {z = 0}.
using PencilParam = std::optional<FieldElem>;
std::string param_name(const PencilParam& a);

/// The models y^q, y^q - y and y^q + y^p over f, as polynomials in y.
std::array<MultiPoly, 3> line_models(Field f, int q);

struct LineDynamics {
  PencilParam a;
  MultiPoly restriction;  // in y
  LineClass tag;
};

/// Restriction of f to the invariant line L_a in the coordinate y, classified
/// up to affine conjugacy over F_{q^k}. Throws InvalidArgument when f does
/// not map L_a to itself.
LineDynamics line_dynamics(const EndoP2& f, const PencilParam& a, unsigned k = 1);

/// First (alpha, beta) in index order over F_{q^k} with
/// alpha u(y) + beta = v(alpha y + beta), if any.
std::optional<std::pair<FieldElem, FieldElem>> affine_conjugacy_1d(const MultiPoly& u, const MultiPoly& v,
                                                                   unsigned k = 1);

struct BulletsReport {
  /// Parameters whose restriction is affinely conjugate to each model, in
  /// the order Power, Additive, Mixed.
  std::array<std::vector<PencilParam>, 3> matches;
};

/// Throws UniquenessFailed unless the matches are exactly {inf}, {0}, {1}.
BulletsReport uniqueness_bullets(const EndoP2& f, unsigned k = 1);

/// h(x, y) = (x, alpha y + beta x + gamma).
struct AffineLineMap {
  FieldElem alpha, beta, gamma;
  PglElem as_pgl() const;
};

struct SearchReport {
  unsigned k = 1;
  std::size_t invariant_lines_f1 = 0, invariant_lines_f2 = 0;
  std::uint64_t candidates_total = 0;  // |F*| |F|^2 over F_{q^k}
  std::uint64_t candidates_tested = 0;  // after pruning, up to the witness
  bool pruned = true;
  std::optional<AffineLineMap> witness;  // lexicographically first by index
};

/// Linear conjugators of f1 to f2 over F_{q^k}. The totally invariant lines
/// of both maps must be exactly the pencil {L_a : a in F_q} + {L_inf} and the
/// bullets must hold (TheoremViolation / UniquenessFailed otherwise); then
/// every conjugator has the AffineLineMap form. With `prune`, alpha and beta
/// are restricted to alpha^q = alpha, beta^q = beta, read off from the
/// degree-q terms.
SearchReport search_linear_conjugator(const EndoP2& f1, const EndoP2& f2, unsigned k = 1, unsigned threads = 1,
                                      bool prune = true);

}  // namespace birconj
