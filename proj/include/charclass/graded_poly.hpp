#pragma once

// Multivariate polynomials over named, graded generators.
//
// A polynomial stores only nonzero coefficients, keyed by exponent vectors
// over a shared, immutable generator list. Iteration order is graded
// lexicographic: total degree ascending, then exponent vectors compared
// lexicographically in declared generator order. That order is also the
// printing order, which makes the text form bit-exact:
//
//   term     := rational '*' factor ('*' factor)*   (constant: rational)
//   factor   := name ('^' uint)?
//   rational := int ('/' uint)?
//
// with terms joined by " + " / " - ", e.g. "7/45*p2 - 1/45*p1^2".

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charclass/errors.hpp"
#include "charclass/scalar.hpp"

namespace charclass {

struct Generator {
  std::string name;
  int degree = 0;

  friend bool operator==(const Generator&, const Generator&) = default;
};

class GeneratorSet {
 public:
  GeneratorSet() = default;
  explicit GeneratorSet(std::vector<Generator> gens) : gens_(std::move(gens)) {
    std::set<std::string> seen;
    for (const auto& g : gens_) {
      if (g.degree <= 0) throw InvalidArgument("generator " + g.name + " must have positive degree");
      if (!seen.insert(g.name).second) throw InvalidArgument("duplicate generator " + g.name);
    }
  }

  std::size_t size() const { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  auto begin() const { return gens_.begin(); }
  auto end() const { return gens_.end(); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw PresentationMismatch("unknown generator " + std::string(name));
  }

  friend bool operator==(const GeneratorSet&, const GeneratorSet&) = default;

 private:
  std::vector<Generator> gens_;
};

using Generators = std::shared_ptr<const GeneratorSet>;

inline Generators make_generators(std::vector<Generator> gens) {
  return std::make_shared<const GeneratorSet>(std::move(gens));
}

inline bool same_generators(const Generators& a, const Generators& b) {
  return a == b || (a && b && *a == *b);
}

using Exponents = std::vector<int>;

inline int monomial_degree(const GeneratorSet& gens, const Exponents& e) {
  int d = 0;
  for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * gens[i].degree;
  return d;
}

struct GradedLexOrder {
  Generators gens;

  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = monomial_degree(*gens, a);
    const int db = monomial_degree(*gens, b);
    if (da != db) return da < db;
    return a < b;
  }
};

template <class Field = RationalField>
class GradedPoly {
 public:
  using field_type = Field;
  using Scalar = typename Field::value_type;
  using TermMap = std::map<Exponents, Scalar, GradedLexOrder>;

  GradedPoly() : GradedPoly(make_generators({})) {}
  explicit GradedPoly(Generators gens, Field field = {})
      : gens_(std::move(gens)), field_(std::move(field)), terms_(GradedLexOrder{gens_}) {}

  static GradedPoly constant(Generators gens, const Scalar& c, Field field = {}) {
    GradedPoly p(std::move(gens), field);
    p.add_term(Exponents(p.gens_->size(), 0), c);
    return p;
  }

  static GradedPoly constant(Generators gens, std::int64_t c, Field field = {}) {
    return constant(gens, field.from_int(c), field);
  }

  static GradedPoly monomial(Generators gens, Exponents e, const Scalar& c, Field field = {}) {
    GradedPoly p(std::move(gens), field);
    p.add_term(std::move(e), c);
    return p;
  }

  static GradedPoly generator(Generators gens, std::string_view name, Field field = {}) {
    Exponents e(gens->size(), 0);
    e[gens->index_of(name)] = 1;
    return monomial(gens, std::move(e), field.one(), field);
  }

  const Generators& generators() const { return gens_; }
  const Field& field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  GradedPoly zero() const { return GradedPoly(gens_, field_); }
  GradedPoly one() const { return constant(gens_, field_.one(), field_); }

  void add_term(Exponents e, const Scalar& c) {
    if (e.size() != gens_->size()) throw InvalidArgument("exponent vector has wrong length");
    for (int x : e)
      if (x < 0) throw InvalidArgument("negative exponent");
    if (field_.is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(std::move(e), c);
      return;
    }
    it->second = it->second + c;
    if (field_.is_zero(it->second)) terms_.erase(it);
  }

  Scalar coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  Scalar constant_term() const { return coefficient(Exponents(gens_->size(), 0)); }

  int degree_of(const Exponents& e) const { return monomial_degree(*gens_, e); }

  // Highest degree present; -1 for the zero polynomial.
  int max_degree() const { return terms_.empty() ? -1 : degree_of(terms_.rbegin()->first); }
  int min_degree() const { return terms_.empty() ? -1 : degree_of(terms_.begin()->first); }

  bool is_homogeneous() const { return terms_.empty() || min_degree() == max_degree(); }

  std::set<int> degrees() const {
    std::set<int> out;
    for (const auto& [e, c] : terms_) out.insert(degree_of(e));
    return out;
  }

  GradedPoly component(int degree) const {
    GradedPoly out = zero();
    for (const auto& [e, c] : terms_)
      if (degree_of(e) == degree) out.terms_.emplace(e, c);
    return out;
  }

  GradedPoly truncated(int max_degree) const {
    GradedPoly out = zero();
    for (const auto& [e, c] : terms_)
      if (degree_of(e) <= max_degree) out.terms_.emplace(e, c);
    return out;
  }

  GradedPoly& operator+=(const GradedPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  GradedPoly& operator-=(const GradedPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  GradedPoly& operator*=(const Scalar& s) {
    if (field_.is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c = c * s;
    return *this;
  }

  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator-(GradedPoly a) {
    for (auto& [e, c] : a.terms_) c = -c;
    return a;
  }
  friend GradedPoly operator*(GradedPoly a, const Scalar& s) { return a *= s; }
  friend GradedPoly operator*(const Scalar& s, GradedPoly a) { return a *= s; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return multiply(a, b); }

  // Product keeping only monomials of degree <= max_degree (no bound if < 0).
  static GradedPoly multiply(const GradedPoly& a, const GradedPoly& b, int max_degree = -1) {
    a.check_compatible(b);
    GradedPoly out = a.zero();
    Exponents e(a.gens_->size());
    for (const auto& [ea, ca] : a.terms_) {
      const int da = a.degree_of(ea);
      for (const auto& [eb, cb] : b.terms_) {
        if (max_degree >= 0 && da + a.degree_of(eb) > max_degree) break;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }

  GradedPoly pow(unsigned n, int max_degree = -1) const {
    GradedPoly acc = one();
    GradedPoly base = *this;
    while (n) {
      if (n & 1) acc = multiply(acc, base, max_degree);
      n >>= 1;
      if (n) base = multiply(base, base, max_degree);
    }
    return acc;
  }

  friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
    return same_generators(a.gens_, b.gens_) && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool negative = field_.is_negative(c);
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      out += field_.format(negative ? Scalar(-c) : c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        out += "*" + (*gens_)[i].name;
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
      }
      first = false;
    }
    return out;
  }

  // Prints factors without a unit coefficient: "p1*p2", "-p1^3", "2*p1". Used
  // where a product with a Thom class is rendered.
  std::string to_compact_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const bool negative = field_.is_negative(c);
      if (first)
        out += negative ? "-" : "";
      else
        out += negative ? " - " : " + ";
      const Scalar mag = negative ? Scalar(-c) : c;
      const bool unit = mag == field_.one();
      const bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
      std::string body;
      if (!unit || constant) body = field_.format(mag);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!body.empty()) body += "*";
        body += (*gens_)[i].name;
        if (e[i] > 1) body += "^" + std::to_string(e[i]);
      }
      out += body;
      first = false;
    }
    return out;
  }

  void check_compatible(const GradedPoly& o) const {
    if (!same_generators(gens_, o.gens_))
      throw PresentationMismatch("polynomials over different generator lists");
    if (!(field_ == o.field_)) throw InvalidArgument("polynomials over different fields");
  }

 private:
  Generators gens_;
  Field field_;
  TermMap terms_;
};

using QPoly = GradedPoly<RationalField>;
using FpPoly = GradedPoly<PrimeField>;

// Re-expresses `p` over `target`, matching generators by name (and degree).
template <class Field>
GradedPoly<Field> embed(const GradedPoly<Field>& p, const Generators& target) {
  if (same_generators(p.generators(), target)) {
    GradedPoly<Field> out(target, p.field());
    for (const auto& [e, c] : p.terms()) out.add_term(e, c);
    return out;
  }
  const auto& src = *p.generators();
  std::vector<std::size_t> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto j = target->find(src[i].name);
    if (!j) {
      bool used = false;
      for (const auto& [e, c] : p.terms()) used = used || e[i] != 0;
      if (used) throw PresentationMismatch("generator " + src[i].name + " is not in the target");
      map[i] = static_cast<std::size_t>(-1);
      continue;
    }
    if ((*target)[*j].degree != src[i].degree)
      throw DegreeMismatch("generator " + src[i].name + " has a different degree in the target");
    map[i] = *j;
  }
  GradedPoly<Field> out(target, p.field());
  for (const auto& [e, c] : p.terms()) {
    Exponents f(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) f[map[i]] = e[i];
    out.add_term(std::move(f), c);
  }
  return out;
}

// Coefficientwise change of field, e.g. Q -> F_p.
template <class To, class From>
GradedPoly<To> change_field(const GradedPoly<From>& p, const To& field) {
  GradedPoly<To> out(p.generators(), field);
  for (const auto& [e, c] : p.terms()) {
    if constexpr (std::is_same_v<typename From::value_type, Rational>)
      out.add_term(e, field.from_rational(c));
    else
      out.add_term(e, field.from_int(static_cast<std::int64_t>(c.value())));
  }
  return out;
}

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool consume(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  BigInt parse_uint() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return BigInt(std::string(s_.substr(start, pos_ - start)));
  }
  std::string parse_name() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      ++pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
    }
    if (start == pos_) fail("expected generator name");
    return std::string(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses the text grammar above. Also accepts a bare factor product with an
// implied unit coefficient ("p1*p2", "-p1") for hand-written fixtures.
template <class Field = RationalField>
GradedPoly<Field> parse_poly(std::string_view text, const Generators& gens, const Field& field = {}) {
  detail::PolyParser ps(text);
  GradedPoly<Field> out(gens, field);
  if (ps.at_end()) ps.fail("empty polynomial");
  bool first = true;
  while (!ps.at_end()) {
    bool negative = false;
    if (ps.consume('-'))
      negative = true;
    else if (!ps.consume('+') && !first)
      ps.fail("expected '+' or '-'");
    first = false;

    Rational coeff = 1;
    Exponents e(gens->size(), 0);
    bool need_factor = true;
    if (std::isdigit(static_cast<unsigned char>(ps.peek()))) {
      BigInt num = ps.parse_uint();
      BigInt den = 1;
      if (ps.consume('/')) den = ps.parse_uint();
      coeff = make_rational(num, den);
      need_factor = ps.consume('*');
    }
    if (need_factor) {
      do {
        const std::string name = ps.parse_name();
        const auto idx = gens->find(name);
        if (!idx) throw PresentationMismatch("unknown generator " + name + " in \"" + std::string(text) + "\"");
        int power = 1;
        if (ps.consume('^')) power = ps.parse_uint().template convert_to<int>();
        e[*idx] += power;
      } while (ps.consume('*'));
    }
    out.add_term(std::move(e), field.from_rational(negative ? Rational(-coeff) : coeff));
  }
  return out;
}

}  // namespace charclass
