#include "birconj/parse.hpp"

#include <cctype>
#include <vector>

#include "birconj/error.hpp"

namespace birconj {

namespace {

struct GrlexKeyGreater {
  bool operator()(const Exponent& a, const Exponent& b) const { return GrlexGreater{}(a, b); }
};

void add_into(LaurentTerms& acc, const Exponent& e, const FieldElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

LaurentTerms mul(const LaurentTerms& a, const LaurentTerms& b) {
  LaurentTerms r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) add_into(r, {ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return r;
}

class Parser {
public:
  Parser(std::string_view text, Field field, std::string_view vars) : s_(text), f_(field), vars_(vars) {}

  LaurentTerms run() {
    LaurentTerms r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

private:
  [[noreturn]] void fail(const std::string& msg, Errc code = Errc::ParseError) const {
    throw Error(code, msg + " at position " + std::to_string(pos_), pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  LaurentTerms constant(const FieldElem& c) {
    LaurentTerms r;
    add_into(r, {0, 0, 0}, c);
    return r;
  }

  LaurentTerms expr() {
    LaurentTerms acc;
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    for (;;) {
      LaurentTerms t = term();
      for (const auto& [e, c] : t) add_into(acc, e, neg ? -c : c);
      if (eat('+'))
        neg = false;
      else if (eat('-'))
        neg = true;
      else
        return acc;
    }
  }

  LaurentTerms term() {
    LaurentTerms acc = factor();
    for (;;) {
      if (eat('*')) {
        acc = mul(acc, factor());
      } else if (eat('/')) {
        std::size_t at = pos_;
        LaurentTerms d = factor();
        if (d.empty()) {
          pos_ = at;
          fail("division by zero", Errc::NotRepresentable);
        }
        if (d.size() != 1) {
          pos_ = at;
          fail("division by a non-monomial expression");
        }
        acc = mul(acc, invert_term(d));
      } else {
        return acc;
      }
    }
  }

  LaurentTerms invert_term(const LaurentTerms& d) {
    const auto& [e, c] = *d.begin();
    LaurentTerms r;
    r.emplace(Exponent{-e[0], -e[1], -e[2]}, c.inverse());
    return r;
  }

  LaurentTerms factor() {
    LaurentTerms b = base();
    if (!eat('^')) return b;
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    if (pos_ - start > 6) fail("exponent too large");
    int k = std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (neg) {
      if (b.size() != 1) fail("negative power of a non-monomial expression");
      if (b.begin()->second.is_zero()) fail("negative power of zero", Errc::NotRepresentable);
      b = invert_term(b);
    }
    LaurentTerms acc = constant(f_.one());
    for (int i = 0; i < k; ++i) acc = mul(acc, b);
    return acc;
  }

  LaurentTerms base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      LaurentTerms r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class v(std::string(s_.substr(start, pos_ - start)));
      return constant(f_.from_mpz(v));
    }
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      if (name.size() == 1) {
        char v = name[0];
        int idx = v == 'x' ? kX : v == 'y' ? kY : v == 'z' ? kZ : -1;
        if (idx >= 0 && vars_.find(v) != std::string_view::npos) {
          Exponent e{0, 0, 0};
          e[idx] = 1;
          LaurentTerms r;
          r.emplace(e, f_.one());
          return r;
        }
        if (v == 't' && f_.is_finite() && f_.extension_degree() > 1) return constant(f_.generator());
      }
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'", Errc::UnknownVariable);
    }
    fail("unexpected character '" + std::string(1, ch) + "'");
  }

  std::string_view s_;
  Field f_;
  std::string_view vars_;
  std::size_t pos_ = 0;
};

std::string monomial_text(const Exponent& e) {
  static const char* names[3] = {"x", "y", "z"};
  std::string out;
  for (int v = 0; v < 3; ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += "*";
    out += names[v];
    if (e[v] != 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

template <class It>
std::string render(It begin, It end, Field field) {
  if (begin == end) return "0";
  std::string out;
  for (It it = begin; it != end; ++it) {
    const Exponent& e = it->first;
    FieldElem c = it->second;
    bool negative = field.is_rational() && sgn(c.rational()) < 0;
    if (negative) c = -c;
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono = monomial_text(e);
    if (mono.empty()) {
      out += c.to_string();
    } else {
      if (!c.is_one()) out += c.to_string() + "*";
      out += mono;
    }
  }
  return out;
}

}  // namespace

LaurentTerms parse_laurent_terms(std::string_view text, Field field, std::string_view vars) {
  return Parser(text, field, vars).run();
}

MultiPoly parse_poly(std::string_view text, Field field, std::string_view vars) {
  LaurentTerms t = parse_laurent_terms(text, field, vars);
  MultiPoly p(field);
  for (const auto& [e, c] : t) {
    if (e[0] < 0 || e[1] < 0 || e[2] < 0)
      throw Error(Errc::ParseError, "negative exponent in polynomial '" + std::string(text) + "'");
    p.add_term(e, c);
  }
  return p;
}

LaurentPoly parse_laurent(std::string_view text, Field field) {
  LaurentTerms t = parse_laurent_terms(text, field, "x");
  LaurentPoly p(field);
  for (const auto& [e, c] : t) p.add_term(e[0], c);
  return p;
}

std::string format_poly(const MultiPoly& p) {
  return render(p.terms().begin(), p.terms().end(), p.field());
}

std::string format_terms(const LaurentTerms& t, Field field) {
  std::map<Exponent, FieldElem, GrlexKeyGreater> sorted(t.begin(), t.end());
  return render(sorted.begin(), sorted.end(), field);
}

}  // namespace birconj
