#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "birconj/charplab.hpp"
#include "birconj/error.hpp"
#include "birconj/linearize.hpp"
#include "birconj/loci.hpp"
#include "birconj/parse.hpp"

using namespace birconj;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInputError = 2 };

struct Globals {
  std::string field = "Q";
  std::optional<unsigned> k;
  bool json = false;
  unsigned threads = 1;
};

// Errors raised by malformed or out-of-scope input; everything else is a
// mathematical outcome.
bool is_input_error(Errc c) {
  switch (c) {
    case Errc::NotConjugate:
    case Errc::NotInClassification:
    case Errc::TheoremViolation:
    case Errc::RelationViolated:
    case Errc::UnexpectedM:
    case Errc::NoDthRoot:
    case Errc::UniquenessFailed:
    case Errc::NotJonquieres:
    case Errc::NotMonomial: return false;
    default: return true;
  }
}

json matrix_json(const PglElem& m) {
  json rows = json::array();
  for (const auto& row : m.matrix()) {
    json r = json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    rows.push_back(r);
  }
  return rows;
}

std::string matrix_text(const PglElem& m) {
  std::string out;
  for (const auto& row : m.matrix()) {
    out += "  [";
    for (int j = 0; j < 3; ++j) out += (j ? ", " : "") + row[j].to_string();
    out += "]\n";
  }
  return out;
}

json lines_json(const std::vector<Vec3>& ls) {
  json a = json::array();
  for (const auto& l : ls) a.push_back(linear_poly(l).to_string());
  return a;
}

void emit(const Globals& g, json report, const std::string& text) {
  if (g.json) {
    report["schema"] = "1";
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

BirMapP2 read_birational(const std::string& h, const std::string& h_inv, Field f) {
  std::optional<Triple> inv;
  if (!h_inv.empty()) inv = parse_triple(h_inv, f);
  return BirMapP2::make(parse_triple(h, f), inv);
}

std::pair<EndoP2, EndoP2> read_pair(const std::string& f1, const std::string& f2, Field f) {
  EndoP2 a = EndoP2::make(parse_triple(f1, f)), b = EndoP2::make(parse_triple(f2, f));
  if (a.degree() != b.degree())
    throw Error(Errc::DegreeMismatch, "conjugate endomorphisms share the degree; got " + std::to_string(a.degree()) +
                                          " and " + std::to_string(b.degree()));
  return {a, b};
}

// ---------------------------------------------------------------- subcommands

struct VerifyArgs {
  std::string h, h_inv, f1, f2;
};

int cmd_verify(const Globals& g, const VerifyArgs& a) {
  Field f = Field::parse(g.field);
  BirMapP2 h = read_birational(a.h, a.h_inv, f);
  auto [f1, f2] = read_pair(a.f1, a.f2, f);
  bool ok = verify_conjugacy(h, f1, f2);
  int dl = check_triple(compose(h.forward(), f1.components()));
  int dr = check_triple(compose(f2.components(), h.forward()));
  json r{{"command", "verify"}, {"field", f.spec()},       {"conjugate", ok},
         {"degree_h", h.degree()}, {"degree_f", f1.degree()}, {"degree_h_f1", dl},
         {"degree_f2_h", dr},     {"topological_degree", f1.topological_degree()}};
  std::ostringstream t;
  t << "conjugate: " << (ok ? "true" : "false") << "\n"
    << "deg h = " << h.degree() << ", deg f = " << f1.degree() << "\n"
    << "deg(h o f1) = " << dl << ", deg(f2 o h) = " << dr << "\n";
  emit(g, r, t.str());
  return ok ? kOk : kNegative;
}

struct LociArgs {
  std::string map;
};

int cmd_loci(const Globals& g, const LociArgs& a) {
  Field f = Field::parse(g.field);
  unsigned k = g.k.value_or(1);
  Triple t = parse_triple(a.map, f);
  int d = check_triple(t);
  json r{{"command", "loci"}, {"field", f.spec()}, {"degree", d}, {"k", k}};
  std::ostringstream txt;
  txt << "map: " << format_triple(reduce_triple(t)) << " (degree " << d << ")\n";

  std::optional<EndoP2> endo;
  try {
    endo = EndoP2::make(t);
  } catch (const Error&) {
  }
  r["endomorphism"] = endo.has_value();
  if (endo) {
    auto ls = invariant_lines(*endo, k);
    r["invariant_lines"] = lines_json(ls);
    txt << "totally invariant lines: " << lines_json(ls).dump() << "\n";
    try {
      LineConfig c = classify(ls);
      r["invariant_lines_tag"] = tag_name(c.tag);
    } catch (const Error& e) {
      r["invariant_lines_tag"] = nullptr;
    }
  } else {
    r["invariant_lines"] = nullptr;
  }

  BirMapP2 h = BirMapP2::make(t);
  PointSet ind = indeterminacy_points(h, k);
  json pts = json::array();
  for (const auto& p : ind.points) pts.push_back(format_point(p));
  r["indeterminacy"] = {{"points", pts}, {"complete", ind.complete}};
  txt << "indeterminacy points: " << pts.dump() << (ind.complete ? "" : " (incomplete)") << "\n";

  ExcData exc = exc_set(h);
  json curves = json::array();
  for (const auto& c : exc.contracted)
    curves.push_back({{"curve", c.curve.to_string()}, {"image", format_point(c.image)}});
  r["exceptional"] = {{"curves", curves}, {"complete", exc.complete}, {"warnings", exc.warnings}};
  txt << "contracted curves:";
  for (const auto& c : exc.contracted) txt << " {" << c.curve.to_string() << " -> " << format_point(c.image) << "}";
  txt << (exc.complete ? "" : " (incomplete)") << "\n";

  int code = kOk;
  if (auto ls = exc.lines()) {
    try {
      r["tag"] = tag_name(classify(*ls).tag);
      txt << "tag: " << tag_name(classify(*ls).tag) << "\n";
    } catch (const Error& e) {
      r["tag"] = nullptr;
      r["error"] = e.what();
      txt << "tag: none (" << e.what() << ")\n";
      code = kNegative;
    }
  } else {
    r["tag"] = nullptr;
    r["error"] = "a contracted curve is not a line";
    txt << "tag: none (a contracted curve is not a line)\n";
    code = kNegative;
  }
  emit(g, r, txt.str());
  return code;
}

int cmd_linearize(const Globals& g, const VerifyArgs& a) {
  Field f = Field::parse(g.field);
  BirMapP2 h = read_birational(a.h, a.h_inv, f);
  auto [f1, f2] = read_pair(a.f1, a.f2, f);
  LinearizeResult res = linearize(f1, f2, h);
  bool verified = res.verified && verify_conjugacy(res.h_prime, f1, f2);
  const Certificate& c = res.certificate;
  json r{{"command", "linearize"},
         {"field", f.spec()},
         {"h_prime", matrix_json(res.h_prime)},
         {"h_prime_map", format_triple(res.h_prime.triple())},
         {"tag", case_name(res.tag)},
         {"config", tag_name(c.config)},
         {"verified", verified},
         {"notes", c.notes}};
  std::vector<std::string> relations;
  if (c.p2) relations = c.p2->relations;
  if (c.p3) relations = c.p3->relations;
  r["relations"] = relations;
  if (c.normalization) {
    r["normalization"] = {{"A", matrix_json(c.normalization->A)},
                          {"B", matrix_json(c.normalization->B)},
                          {"h_normalized", format_triple(c.normalization->hn.forward())},
                          {"warnings", c.normalization->warnings}};
  }
  std::ostringstream t;
  t << "h' =\n" << matrix_text(res.h_prime) << "as a map: " << format_triple(res.h_prime.triple()) << "\n"
    << "case: " << case_name(res.tag) << "\n"
    << "verified: " << (verified ? "true" : "false") << "\n";
  emit(g, r, t.str());
  return verified ? kOk : kNegative;
}

struct CharpArgs {
  std::uint32_t p = 3;
  unsigned s = 2;
  std::string P = "x^2";
  bool control = true;
};

int cmd_charp_demo(const Globals& g, const CharpArgs& a) {
  unsigned k = g.k.value_or(2);
  Field F = Field::finite(a.p, a.s);
  CharPConfig cfg{a.p, a.s, parse_poly(a.P, F), k};
  Counterexample ce = build_counterexample(cfg);
  bool gconj = verify_g_conjugacy(ce.f1, ce.f2, ce.g);
  auto lines1 = invariant_lines(ce.f1, k), lines2 = invariant_lines(ce.f2, k);

  auto models = line_models(F, ce.f1.degree());
  json bullets;
  std::ostringstream t;
  t << "q = " << cfg.q() << ", P = " << cfg.P.to_string() << ", k = " << k << "\n"
    << "f1 = " << ce.f1.to_string() << "\n"
    << "f2 = " << ce.f2.to_string() << "\n"
    << "deg G = " << ce.G.total_degree() << " < deg G(x, y + P) = " << ce.G_shifted.total_degree() << " < q\n"
    << "g-conjugacy: " << (gconj ? "true" : "false") << "\n"
    << "totally invariant lines: " << lines1.size() << " (f1), " << lines2.size() << " (f2)\n";
  const char* keys[] = {"inf", "zero", "one"};
  for (const EndoP2* f : {&ce.f1, &ce.f2}) {
    BulletsReport b = uniqueness_bullets(*f, k);
    json& slot = f == &ce.f1 ? bullets : bullets["f2"];
    for (int i = 0; i < 3; ++i) {
      slot[keys[i]] = models[i].to_string();
      slot["params"][keys[i]] = param_name(b.matches[i][0]);
    }
  }
  t << "bullets: inf -> " << models[0].to_string() << ", 0 -> " << models[1].to_string() << ", 1 -> "
    << models[2].to_string() << " (unique for f1 and f2)\n";

  SearchReport s = search_linear_conjugator(ce.f1, ce.f2, k, g.threads);
  json search{{"k", s.k},
              {"candidates_total", s.candidates_total},
              {"candidates_tested", s.candidates_tested},
              {"witness", s.witness ? matrix_json(s.witness->as_pgl()) : json(nullptr)}};
  t << "search over F_" << F.order() << "^" << k << ": " << s.candidates_tested << " candidates tested, witness: "
    << (s.witness ? s.witness->as_pgl().to_string() : "none") << "\n";

  bool control_ok = true;
  json r{{"command", "charp-demo"},
         {"config", {{"p", a.p}, {"s", a.s}, {"q", cfg.q()}, {"P", cfg.P.to_string()}, {"k", k}}},
         {"degrees", {{"G", ce.G.total_degree()}, {"G_shifted", ce.G_shifted.total_degree()}, {"q", cfg.q()}}},
         {"g_conjugacy", gconj},
         {"invariant_line_count", lines1.size()},
         {"invariant_line_count_f2", lines2.size()},
         {"bullets", bullets},
         {"search", search}};
  if (a.control) {
    SearchReport c = search_linear_conjugator(ce.f1, ce.f1, k, g.threads);
    control_ok = c.witness && c.witness->as_pgl().is_identity();
    r["control"] = {{"candidates_tested", c.candidates_tested},
                    {"witness", c.witness ? matrix_json(c.witness->as_pgl()) : json(nullptr)}};
    t << "control f1 vs f1: " << (control_ok ? "identity found" : "FAILED") << "\n";
  }
  bool pass = gconj && lines1.size() == cfg.q() + 1 && !s.witness && control_ok;
  r["predicted_outcomes_hold"] = pass;
  t << "predicted outcomes hold: " << (pass ? "true" : "false") << "\n";
  emit(g, r, t.str());
  return pass ? kOk : kNegative;
}

struct ValuationArgs {
  std::string s = "1", t = "1", P = "x", Q = "y", Pinv, Qinv, poly;
};

int cmd_valuation(const Globals& g, const ValuationArgs& a) {
  Field f = Field::parse(g.field);
  mpq_class s, t;
  try {
    s = mpq_class(a.s);
    t = mpq_class(a.t);
  } catch (const std::invalid_argument&) {
    throw Error(Errc::InvalidArgument, "weights must be rationals like 3 or 1/2");
  }
  std::string Pinv = a.Pinv.empty() ? a.P : a.Pinv, Qinv = a.Qinv.empty() ? a.Q : a.Qinv;
  MonomialValuation v = MonomialValuation::make(s, t, parse_poly(a.P, f), parse_poly(a.Q, f), parse_poly(Pinv, f),
                                                parse_poly(Qinv, f));
  mpq_class val = monomial_valuation(v, parse_poly(a.poly, f));
  json r{{"command", "valuation"}, {"field", f.spec()}, {"weights", {s.get_str(), t.get_str()}},
         {"basis", {a.P, a.Q}},    {"value", val.get_str()}};
  emit(g, r, "v = " + val.get_str() + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Birational and linear conjugacy of endomorphisms of the projective plane"};
  app.require_subcommand(1);
  // -h stays free for the conjugator option --h.
  app.set_help_flag("--help", "Print this help message and exit");
  Globals g;
  app.add_option("--field", g.field, "Coefficient field: Q, F5, F9, F9/t^2+1")->capture_default_str();
  app.add_option("--k", g.k, "Extension degree for searches over F_{q^k}")->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Emit a JSON report");
  app.add_option("--threads", g.threads, "Worker threads for the linear conjugator search")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check h o f1 = f2 o h");
  verify->add_option("--h", va.h, "Birational map h")->required();
  verify->add_option("--h-inv", va.h_inv, "Inverse of h (checked)");
  verify->add_option("--f1", va.f1, "Endomorphism f1")->required();
  verify->add_option("--f2", va.f2, "Endomorphism f2")->required();

  LociArgs la;
  auto* loci = app.add_subcommand("loci", "Indeterminacy points, contracted curves, invariant lines, type");
  loci->add_option("map", la.map, "Map as [F0 : F1 : F2] or (P, Q) [on a2|xne0|torus]")->required();

  VerifyArgs lin;
  auto* linearize_cmd = app.add_subcommand("linearize", "Linear conjugator from a birational one");
  linearize_cmd->add_option("--h", lin.h, "Birational conjugator h")->required();
  linearize_cmd->add_option("--h-inv", lin.h_inv, "Inverse of h (needed unless it can be synthesized)");
  linearize_cmd->add_option("--f1", lin.f1, "Endomorphism f1")->required();
  linearize_cmd->add_option("--f2", lin.f2, "Endomorphism f2")->required();

  CharpArgs ca;
  auto* charp = app.add_subcommand("charp-demo", "Pair conjugate by a plane automorphism but not by a linear map");
  charp->add_option("--p", ca.p, "Characteristic")->capture_default_str();
  charp->add_option("--s", ca.s, "q = p^s")->capture_default_str();
  charp->add_option("--P", ca.P, "Polynomial P(x) over F_q")->capture_default_str();
  charp->add_flag("!--no-control", ca.control, "Skip the f1 vs f1 control search");

  ValuationArgs vl;
  auto* val = app.add_subcommand("valuation", "Monomial valuation -max(s i + t j) in a basis (P, Q)");
  val->add_option("--s", vl.s, "Weight of P")->capture_default_str();
  val->add_option("--t", vl.t, "Weight of Q")->capture_default_str();
  val->add_option("--basis-p", vl.P, "First basis polynomial")->capture_default_str();
  val->add_option("--basis-q", vl.Q, "Second basis polynomial")->capture_default_str();
  val->add_option("--inv-p", vl.Pinv, "First component of the inverse automorphism");
  val->add_option("--inv-q", vl.Qinv, "Second component of the inverse automorphism");
  val->add_option("poly", vl.poly, "Polynomial in x, y")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*verify) return cmd_verify(g, va);
    if (*loci) return cmd_loci(g, la);
    if (*linearize_cmd) return cmd_linearize(g, lin);
    if (*charp) return cmd_charp_demo(g, ca);
    if (*val) return cmd_valuation(g, vl);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (e.code() == Errc::ParseError) std::cerr << " (at offset " << e.position() << ")";
    std::cerr << "\n";
    if (g.json) {
      json r{{"schema", "1"}, {"error", errc_name(e.code())}, {"message", e.what()}};
      std::cout << r.dump(2) << "\n";
    }
    return is_input_error(e.code()) ? kInputError : kNegative;
  }
  return kInputError;
}
