#include "birconj/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>

#include "birconj/error.hpp"

namespace birconj {

namespace detail {

struct FieldData {
  bool rational = false;
  std::uint32_t p = 0;
  unsigned s = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // monic, low to high, size s+1
  std::vector<std::uint32_t> pw;       // p^i
  std::vector<std::uint32_t> exp;      // exp[i] = g^i, i < q-1
  std::vector<std::uint32_t> log;      // log[exp[i]] = i
  std::vector<std::uint32_t> add_table;
  std::uint32_t primitive = 1;
  std::string spec;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (s == 1) return (a + b) % p;
    if (!add_table.empty()) return add_table[std::size_t(a) * q + b];
    std::uint32_t r = 0;
    for (unsigned i = 0; i < s; ++i) {
      std::uint32_t da = (a / pw[i]) % p, db = (b / pw[i]) % p;
      r += ((da + db) % p) * pw[i];
    }
    return r;
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (s == 1) return a == 0 ? 0 : p - a;
    std::uint32_t r = 0;
    for (unsigned i = 0; i < s; ++i) {
      std::uint32_t da = (a / pw[i]) % p;
      r += ((p - da) % p) * pw[i];
    }
    return r;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (s == 1) return std::uint32_t(std::uint64_t(a) * b % p);
    return exp[(std::uint64_t(log[a]) + log[b]) % (q - 1)];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (s == 1) {
      // Fermat: a^(p-2)
      std::uint64_t r = 1, base = a, e = p - 2;
      while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
      }
      return std::uint32_t(r);
    }
    return exp[(q - 1 - log[a]) % (q - 1)];
  }
};

}  // namespace detail

namespace {

using detail::FieldData;
using Digits = std::vector<std::uint32_t>;

Digits to_digits(std::uint32_t idx, std::uint32_t p, unsigned s) {
  Digits d(s);
  for (unsigned i = 0; i < s; ++i) {
    d[i] = idx % p;
    idx /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint32_t r = 0;
  for (std::size_t i = d.size(); i-- > 0;) r = r * p + d[i];
  return r;
}

// Product of residues modulo a monic modulus over F_p.
Digits mulmod(const Digits& a, const Digits& b, const Digits& modulus, std::uint32_t p) {
  const unsigned s = unsigned(modulus.size() - 1);
  std::vector<std::uint64_t> prod(2 * s, 0);
  for (unsigned i = 0; i < s; ++i)
    for (unsigned j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  for (unsigned k = 2 * s; k-- > s;) {
    std::uint64_t c = prod[k];
    if (!c) continue;
    for (unsigned i = 0; i <= s; ++i) {
      std::size_t pos = k - s + i;
      prod[pos] = (prod[pos] + (p - c) * modulus[i]) % p;
    }
  }
  Digits r(s);
  for (unsigned i = 0; i < s; ++i) r[i] = std::uint32_t(prod[i]);
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Remainder of a by monic b over F_p (vectors low to high, trimmed).
Digits poly_rem(Digits a, const Digits& b, std::uint32_t p) {
  while (a.size() >= b.size()) {
    std::uint64_t c = a.back();
    std::size_t shift = a.size() - b.size();
    if (c)
      for (std::size_t i = 0; i < b.size(); ++i)
        a[shift + i] = std::uint32_t((a[shift + i] + (p - c) * std::uint64_t(b[i])) % p);
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool is_irreducible(const Digits& m, std::uint32_t p) {
  const unsigned s = unsigned(m.size() - 1);
  for (unsigned deg = 1; deg <= s / 2; ++deg) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Digits f(deg + 1);
      std::uint64_t v = idx;
      for (unsigned i = 0; i < deg; ++i) {
        f[i] = std::uint32_t(v % p);
        v /= p;
      }
      f[deg] = 1;
      if (poly_rem(m, f, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::string render_modulus(const Digits& m) {
  std::string out;
  for (std::size_t k = m.size(); k-- > 0;) {
    if (!m[k]) continue;
    if (!out.empty()) out += "+";
    std::string mono = k == 0 ? "" : (k == 1 ? "t" : "t^" + std::to_string(k));
    if (mono.empty())
      out += std::to_string(m[k]);
    else if (m[k] == 1)
      out += mono;
    else
      out += std::to_string(m[k]) + "*" + mono;
  }
  return out;
}

constexpr std::uint32_t kMaxOrder = 1u << 20;

struct Registry {
  std::mutex mu;
  std::map<std::pair<std::uint32_t, Digits>, std::unique_ptr<FieldData>> finite;
  std::map<std::pair<const FieldData*, const FieldData*>, std::vector<std::uint32_t>> embeddings;
  FieldData rationals;

  Registry() {
    rationals.rational = true;
    rationals.spec = "Q";
  }
};

Registry& registry() {
  static Registry r;
  return r;
}

const FieldData* make_finite(std::uint32_t p, const Digits& modulus) {
  if (!is_prime(p)) throw Error(Errc::InvalidField, "characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2 || modulus.back() != 1)
    throw Error(Errc::InvalidField, "modulus must be monic of degree >= 1");
  for (auto c : modulus)
    if (c >= p) throw Error(Errc::InvalidField, "modulus coefficient out of range");
  const unsigned s = unsigned(modulus.size() - 1);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < s; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(Errc::InvalidField, "field too large (limit 2^20 elements)");
  }

  Registry& reg = registry();
  std::lock_guard lock(reg.mu);
  auto key = std::make_pair(p, modulus);
  if (auto it = reg.finite.find(key); it != reg.finite.end()) return it->second.get();
  if (!is_irreducible(modulus, p))
    throw Error(Errc::InvalidField, "modulus " + render_modulus(modulus) + " is reducible over F" + std::to_string(p));

  auto d = std::make_unique<FieldData>();
  d->p = p;
  d->s = s;
  d->q = std::uint32_t(q);
  d->modulus = modulus;
  d->pw.resize(s);
  for (unsigned i = 0; i < s; ++i) d->pw[i] = i == 0 ? 1 : d->pw[i - 1] * p;
  d->spec = "F" + std::to_string(q);
  if (s > 1) d->spec += "/" + render_modulus(modulus);

  if (s > 1) {
    // Find a primitive element, then tabulate exp/log.
    auto factors = prime_factors(q - 1);
    auto power = [&](const Digits& g, std::uint64_t e) {
      Digits r(s, 0), base = g;
      r[0] = 1;
      while (e) {
        if (e & 1) r = mulmod(r, base, modulus, p);
        base = mulmod(base, base, modulus, p);
        e >>= 1;
      }
      return r;
    };
    Digits one(s, 0);
    one[0] = 1;
    for (std::uint32_t cand = 2; cand < q; ++cand) {
      Digits g = to_digits(cand, p, s);
      bool primitive = true;
      for (auto r : factors)
        if (power(g, (q - 1) / r) == one) {
          primitive = false;
          break;
        }
      if (primitive) {
        d->primitive = cand;
        break;
      }
    }
    d->exp.resize(q - 1);
    d->log.assign(q, 0);
    Digits cur = one, g = to_digits(d->primitive, p, s);
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
      std::uint32_t idx = from_digits(cur, p);
      d->exp[i] = idx;
      d->log[idx] = i;
      cur = mulmod(cur, g, modulus, p);
    }
    if (q <= 1024) {
      d->add_table.resize(std::size_t(q) * q);
      for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
          std::uint32_t r = 0;
          for (unsigned i = 0; i < s; ++i) r += (((a / d->pw[i]) % p + (b / d->pw[i]) % p) % p) * d->pw[i];
          d->add_table[std::size_t(a) * q + b] = r;
        }
    }
  } else {
    for (std::uint32_t cand = (p == 2 ? 1 : 2); cand < p; ++cand) {
      bool primitive = true;
      for (auto r : prime_factors(p - 1)) {
        std::uint64_t acc = 1, base = cand, e = (p - 1) / r;
        while (e) {
          if (e & 1) acc = acc * base % p;
          base = base * base % p;
          e >>= 1;
        }
        if (acc == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        d->primitive = cand;
        break;
      }
    }
  }
  const FieldData* out = d.get();
  reg.finite.emplace(std::move(key), std::move(d));
  return out;
}

Digits default_modulus(std::uint32_t p, unsigned s) {
  if (!is_prime(p)) throw Error(Errc::InvalidField, "characteristic " + std::to_string(p) + " is not prime");
  if (s == 1) return {0, 1};
  std::uint64_t count = 1;
  for (unsigned i = 0; i < s; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Digits m(s + 1);
    std::uint64_t v = idx;
    for (unsigned i = 0; i < s; ++i) {
      m[i] = std::uint32_t(v % p);
      v /= p;
    }
    m[s] = 1;
    if (m[0] != 0 && is_irreducible(m, p)) return m;
  }
  throw Error(Errc::InvalidField, "no irreducible polynomial found");
}

// Parses `t^2+2*t+1` style univariate integer polynomials.
Digits parse_modulus(std::string_view text, std::uint32_t p) {
  std::map<unsigned, long long> coeffs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> long long {
    long long v = 0;
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
    if (i == start) throw Error(Errc::ParseError, "expected number in modulus", i);
    return v;
  };
  skip();
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    }
    long long c = 1;
    unsigned e = 0;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      c = number();
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      } else {
        coeffs[0] += sign * c;
        skip();
        continue;
      }
    }
    if (i >= text.size() || text[i] != 't') throw Error(Errc::ParseError, "expected t in modulus", i);
    ++i;
    skip();
    e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip();
      e = unsigned(number());
    }
    coeffs[e] += sign * c;
    skip();
  }
  if (coeffs.empty()) throw Error(Errc::ParseError, "empty modulus", 0);
  unsigned deg = coeffs.rbegin()->first;
  Digits m(deg + 1, 0);
  for (auto [k, v] : coeffs) m[k] = std::uint32_t(((v % static_cast<long long>(p)) + p) % p);
  while (m.size() > 1 && m.back() == 0) m.pop_back();
  return m;
}

}  // namespace

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::NoEmbedding: return "NoEmbedding";
    case Errc::InvalidField: return "InvalidField";
    case Errc::NotHomogeneous: return "NotHomogeneous";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::CommonFactor: return "CommonFactor";
    case Errc::NotDominant: return "NotDominant";
    case Errc::NotRegular: return "NotRegular";
    case Errc::ZeroTriple: return "ZeroTriple";
    case Errc::InvalidInverse: return "InvalidInverse";
    case Errc::InverseRequired: return "InverseRequired";
    case Errc::NotRegularOnChart: return "NotRegularOnChart";
    case Errc::NotInClassification: return "NotInClassification";
    case Errc::NotConjugate: return "NotConjugate";
    case Errc::NotJonquieres: return "NotJonquieres";
    case Errc::NotMonomial: return "NotMonomial";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::TheoremViolation: return "TheoremViolation";
    case Errc::NoDthRoot: return "NoDthRoot";
    case Errc::CharDividesD: return "CharDividesD";
    case Errc::RelationViolated: return "RelationViolated";
    case Errc::UnexpectedM: return "UnexpectedM";
    case Errc::DegreeTooSmall: return "DegreeTooSmall";
    case Errc::DegreeBoundViolated: return "DegreeBoundViolated";
    case Errc::UniquenessFailed: return "UniquenessFailed";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Field

Field::Field() : d_(&registry().rationals) {}

Field Field::rationals() { return Field(); }

Field Field::finite(std::uint32_t p, unsigned s) {
  if (s == 0) throw Error(Errc::InvalidField, "extension degree must be >= 1");
  return Field(make_finite(p, default_modulus(p, s)));
}

Field Field::finite(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  return Field(make_finite(p, modulus));
}

Field Field::parse(std::string_view spec) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  spec = trim(spec);
  if (spec == "Q" || spec == "QQ") return rationals();
  if (spec.empty() || spec[0] != 'F') throw Error(Errc::InvalidField, "unknown field spec '" + std::string(spec) + "'");
  std::size_t slash = spec.find('/');
  std::string_view qtext = trim(spec.substr(1, slash == std::string_view::npos ? spec.npos : slash - 1));
  if (qtext.empty() || !std::all_of(qtext.begin(), qtext.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw Error(Errc::InvalidField, "bad field order in '" + std::string(spec) + "'");
  std::uint64_t q = std::stoull(std::string(qtext));
  if (q < 2 || q > kMaxOrder) throw Error(Errc::InvalidField, "field order out of range");
  auto factors = prime_factors(q);
  if (factors.size() != 1) throw Error(Errc::InvalidField, std::to_string(q) + " is not a prime power");
  std::uint32_t p = std::uint32_t(factors[0]);
  unsigned s = 0;
  for (std::uint64_t v = q; v > 1; v /= p) ++s;
  if (slash == std::string_view::npos) return finite(p, s);
  Digits m = parse_modulus(trim(spec.substr(slash + 1)), p);
  if (m.size() != s + 1)
    throw Error(Errc::InvalidField, "modulus degree does not match field order " + std::to_string(q));
  return finite(p, m);
}

bool Field::is_rational() const { return d_->rational; }
std::uint32_t Field::characteristic() const { return d_->rational ? 0 : d_->p; }
unsigned Field::extension_degree() const { return d_->rational ? 1 : d_->s; }
std::uint32_t Field::order() const { return d_->rational ? 0 : d_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return d_->modulus; }
std::string Field::spec() const { return d_->spec; }

FieldElem Field::zero() const { return from_int(0); }
FieldElem Field::one() const { return from_int(1); }

FieldElem Field::from_int(long v) const {
  if (d_->rational) return FieldElem(d_, mpq_class(v));
  long r = v % long(d_->p);
  if (r < 0) r += d_->p;
  return FieldElem(d_, std::uint32_t(r));
}

FieldElem Field::from_mpz(const mpz_class& v) const {
  if (d_->rational) return FieldElem(d_, mpq_class(v));
  mpz_class r = v % d_->p;
  if (r < 0) r += d_->p;
  return FieldElem(d_, std::uint32_t(r.get_ui()));
}

FieldElem Field::from_rational(const mpq_class& v) const {
  if (d_->rational) {
    mpq_class c = v;
    c.canonicalize();
    return FieldElem(d_, std::move(c));
  }
  FieldElem den = from_mpz(v.get_den());
  if (den.is_zero())
    throw Error(Errc::NotRepresentable, v.get_str() + " is not representable in " + d_->spec);
  return from_mpz(v.get_num()) / den;
}

FieldElem Field::from_index(std::uint32_t index) const {
  if (d_->rational) throw Error(Errc::InvalidArgument, "from_index on the rationals");
  if (index >= d_->q) throw Error(Errc::InvalidArgument, "element index out of range");
  return FieldElem(d_, index);
}

FieldElem Field::generator() const {
  if (d_->rational) throw Error(Errc::InvalidArgument, "the rationals have no generator t");
  if (d_->s == 1) {
    // t reduces to -m_0 when the modulus is linear.
    return from_int(0) - from_int(long(d_->modulus[0]));
  }
  return FieldElem(d_, d_->p);
}

FieldElem Field::primitive_element() const {
  if (d_->rational) throw Error(Errc::InvalidArgument, "the rationals have no primitive element");
  return FieldElem(d_, d_->primitive);
}

std::vector<FieldElem> Field::elements() const {
  if (d_->rational) throw Error(Errc::InvalidArgument, "cannot enumerate the rationals");
  std::vector<FieldElem> out;
  out.reserve(d_->q);
  for (std::uint32_t i = 0; i < d_->q; ++i) out.push_back(FieldElem(d_, i));
  return out;
}

// ---------------------------------------------------------------- FieldElem

FieldElem::FieldElem() : f_(&registry().rationals), v_(mpq_class(0)) {}

FieldElem::FieldElem(Field f, long v) : FieldElem(f.from_int(v)) {}

Field FieldElem::field() const { return Field(f_); }

bool FieldElem::is_zero() const {
  if (f_->rational) return sgn(std::get<mpq_class>(v_)) == 0;
  return std::get<std::uint32_t>(v_) == 0;
}

bool FieldElem::is_one() const {
  if (f_->rational) return std::get<mpq_class>(v_) == 1;
  return std::get<std::uint32_t>(v_) == 1;
}

std::uint32_t FieldElem::index() const {
  if (f_->rational) throw Error(Errc::InvalidArgument, "index() on a rational");
  return std::get<std::uint32_t>(v_);
}

const mpq_class& FieldElem::rational() const {
  if (!f_->rational) throw Error(Errc::InvalidArgument, "rational() on a finite-field element");
  return std::get<mpq_class>(v_);
}

void FieldElem::check_same(const FieldElem& o) const {
  if (f_ != o.f_) throw Error(Errc::FieldMismatch, "operands from " + f_->spec + " and " + o.f_->spec);
}

FieldElem FieldElem::operator-() const {
  if (f_->rational) return FieldElem(f_, mpq_class(-std::get<mpq_class>(v_)));
  return FieldElem(f_, f_->neg(std::get<std::uint32_t>(v_)));
}

FieldElem& FieldElem::operator+=(const FieldElem& o) {
  check_same(o);
  if (f_->rational)
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  else
    v_ = f_->add(std::get<std::uint32_t>(v_), std::get<std::uint32_t>(o.v_));
  return *this;
}

FieldElem& FieldElem::operator-=(const FieldElem& o) {
  check_same(o);
  if (f_->rational)
    std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
  else
    v_ = f_->add(std::get<std::uint32_t>(v_), f_->neg(std::get<std::uint32_t>(o.v_)));
  return *this;
}

FieldElem& FieldElem::operator*=(const FieldElem& o) {
  check_same(o);
  if (f_->rational)
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  else
    v_ = f_->mul(std::get<std::uint32_t>(v_), std::get<std::uint32_t>(o.v_));
  return *this;
}

FieldElem& FieldElem::operator/=(const FieldElem& o) {
  check_same(o);
  if (o.is_zero()) throw Error(Errc::InvalidArgument, "division by zero");
  if (f_->rational)
    std::get<mpq_class>(v_) /= std::get<mpq_class>(o.v_);
  else
    v_ = f_->mul(std::get<std::uint32_t>(v_), f_->inv(std::get<std::uint32_t>(o.v_)));
  return *this;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw Error(Errc::InvalidArgument, "inverse of zero");
  if (f_->rational) return FieldElem(f_, mpq_class(1 / std::get<mpq_class>(v_)));
  return FieldElem(f_, f_->inv(std::get<std::uint32_t>(v_)));
}

FieldElem FieldElem::pow(long long e) const {
  FieldElem base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? 0ull - static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
  if (!f_->rational && n > 0 && !base.is_zero() && f_->s > 1) {
    std::uint32_t lg = f_->log[std::get<std::uint32_t>(base.v_)];
    return FieldElem(f_, f_->exp[(std::uint64_t(lg) * (n % (f_->q - 1))) % (f_->q - 1)]);
  }
  FieldElem acc = f_->rational ? FieldElem(f_, mpq_class(1)) : FieldElem(f_, std::uint32_t(1));
  while (n) {
    if (n & 1) acc *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return acc;
}

std::strong_ordering operator<=>(const FieldElem& a, const FieldElem& b) {
  a.check_same(b);
  if (a.f_->rational) {
    int c = cmp(std::get<mpq_class>(a.v_), std::get<mpq_class>(b.v_));
    return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  return std::get<std::uint32_t>(a.v_) <=> std::get<std::uint32_t>(b.v_);
}

bool operator==(const FieldElem& a, const FieldElem& b) {
  if (a.f_ != b.f_) return false;
  if (a.f_->rational) return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
  return std::get<std::uint32_t>(a.v_) == std::get<std::uint32_t>(b.v_);
}

bool FieldElem::is_simple() const {
  return f_->rational || std::get<std::uint32_t>(v_) < f_->p;
}

std::string FieldElem::to_string() const {
  if (f_->rational) return std::get<mpq_class>(v_).get_str();
  std::uint32_t idx = std::get<std::uint32_t>(v_);
  if (idx < f_->p) return std::to_string(idx);
  Digits d = to_digits(idx, f_->p, f_->s);
  std::string out;
  for (std::size_t k = d.size(); k-- > 0;) {
    if (!d[k]) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(d[k]);
      continue;
    }
    if (d[k] != 1) out += std::to_string(d[k]) + "*";
    out += k == 1 ? "t" : "t^" + std::to_string(k);
  }
  return "(" + out + ")";
}

// ---------------------------------------------------------------- helpers

std::vector<FieldElem> nth_roots(const FieldElem& a, unsigned n) {
  Field f = a.field();
  std::vector<FieldElem> out;
  if (n == 0) throw Error(Errc::InvalidArgument, "0-th root");
  if (f.is_finite()) {
    for (const auto& x : f.elements())
      if (x.pow(n) == a) out.push_back(x);
    return out;
  }
  const mpq_class& v = a.rational();
  if (sgn(v) == 0) return {a};
  if (sgn(v) < 0 && n % 2 == 0) return {};
  mpz_class num = abs(v.get_num()), den = v.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return {};
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return {};
  mpq_class r(rn, rd);
  r.canonicalize();
  if (n % 2 == 1) {
    if (sgn(v) < 0) r = -r;
    out.push_back(f.from_rational(r));
  } else {
    out.push_back(f.from_rational(-r));
    out.push_back(f.from_rational(r));
  }
  return out;
}

unsigned multiplicative_order(const FieldElem& u, unsigned bound) {
  if (u.is_zero()) return 0;
  Field f = u.field();
  if (f.is_rational()) {
    if (u.is_one()) return 1;
    if ((-u).is_one()) return 2;
    return 0;
  }
  FieldElem acc = u;
  for (unsigned n = 1; n <= bound; ++n) {
    if (acc.is_one()) return n;
    acc *= u;
  }
  return 0;
}

bool embeds_into(Field from, Field to) {
  if (from == to) return true;
  if (from.is_rational() || to.is_rational()) return false;
  return from.characteristic() == to.characteristic() && to.extension_degree() % from.extension_degree() == 0;
}

FieldElem embed(const FieldElem& e, Field target) {
  Field src = e.field();
  if (src == target) return e;
  if (!embeds_into(src, target))
    throw Error(Errc::NoEmbedding, src.spec() + " does not embed into " + target.spec());
  Registry& reg = registry();
  auto key = std::make_pair(src.data(), target.data());
  {
    std::lock_guard lock(reg.mu);
    if (auto it = reg.embeddings.find(key); it != reg.embeddings.end()) return target.from_index(it->second[e.index()]);
  }
  const auto& m = src.modulus();
  auto eval_mod = [&](const FieldElem& x) {
    FieldElem acc = target.zero();
    for (std::size_t i = m.size(); i-- > 0;) acc = acc * x + target.from_int(long(m[i]));
    return acc;
  };
  FieldElem root = target.zero();
  bool found = false;
  for (const auto& x : target.elements())
    if (eval_mod(x).is_zero()) {
      root = x;
      found = true;
      break;
    }
  if (!found) throw Error(Errc::NoEmbedding, "modulus has no root in " + target.spec());
  const std::uint32_t p = src.characteristic();
  const unsigned s = src.extension_degree();
  std::vector<std::uint32_t> table(src.order());
  for (std::uint32_t idx = 0; idx < src.order(); ++idx) {
    Digits d = to_digits(idx, p, s);
    FieldElem acc = target.zero();
    for (std::size_t i = d.size(); i-- > 0;) acc = acc * root + target.from_int(long(d[i]));
    table[idx] = acc.index();
  }
  std::lock_guard lock(reg.mu);
  auto& stored = reg.embeddings.emplace(key, std::move(table)).first->second;
  return target.from_index(stored[e.index()]);
}

}  // namespace birconj
