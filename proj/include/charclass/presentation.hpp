#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "charclass/graded_poly.hpp"

namespace charclass {

inline constexpr int kDefaultTruncation = 64;

// g^power -> replacement. The replacement is homogeneous of the same degree
// and has g-exponent below `power`, so rewriting never raises degree.
struct RewriteRule {
  std::size_t generator = 0;
  int power = 0;
  QPoly replacement;
};

// Generators, rewrite rules and a truncation degree. Normal form: no monomial
// matches a rule and no monomial has degree above the truncation.
class RingPresentation {
 public:
  RingPresentation() : RingPresentation(make_generators({})) {}
  explicit RingPresentation(Generators gens, std::vector<RewriteRule> rules = {},
                            int truncation = kDefaultTruncation, std::string name = {})
      : gens_(std::move(gens)), rules_(std::move(rules)), truncation_(truncation), name_(std::move(name)) {
    if (truncation_ < 0) throw InvalidArgument("truncation degree must be nonnegative");
    std::vector<bool> seen(gens_->size(), false);
    for (auto& r : rules_) {
      if (r.generator >= gens_->size()) throw InvalidArgument("rewrite rule on unknown generator");
      if (seen[r.generator]) throw InvalidArgument("two rewrite rules for " + (*gens_)[r.generator].name);
      seen[r.generator] = true;
      if (r.power < 1) throw InvalidArgument("rewrite power must be positive");
      r.replacement = embed(r.replacement, gens_);
      const int lhs_degree = r.power * (*gens_)[r.generator].degree;
      for (const auto& [e, c] : r.replacement.terms()) {
        if (monomial_degree(*gens_, e) != lhs_degree)
          throw DegreeMismatch("rewrite rule for " + (*gens_)[r.generator].name + " is not homogeneous");
        if (e[r.generator] >= r.power)
          throw InvalidArgument("rewrite rule for " + (*gens_)[r.generator].name + " does not reduce");
      }
    }
  }

  // H*(BSO(n)) away from characteristic 2: Q[p1..pm] for n = 2m+1 and
  // Q[p1..pm, chi]/(chi^2 - pm) for n = 2m.
  static RingPresentation bso(int n, int truncation = kDefaultTruncation) {
    if (n < 0) throw InvalidArgument("BSO(n) needs n >= 0");
    const int m = n / 2;
    std::vector<Generator> gens;
    for (int i = 1; i <= m; ++i) gens.push_back({"p" + std::to_string(i), 4 * i});
    std::vector<RewriteRule> rules;
    if (n % 2 == 0 && m >= 1) {
      gens.push_back({"chi", n});
      auto g = make_generators(gens);
      rules.push_back({static_cast<std::size_t>(m), 2, QPoly::generator(g, "p" + std::to_string(m))});
      return RingPresentation(g, std::move(rules), truncation, "BSO(" + std::to_string(n) + ")");
    }
    return RingPresentation(make_generators(gens), {}, truncation, "BSO(" + std::to_string(n) + ")");
  }

  const Generators& generators() const { return gens_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  int truncation() const { return truncation_; }
  const std::string& name() const { return name_; }

  RingPresentation with_truncation(int t) const { return RingPresentation(gens_, rules_, t, name_); }

  const RewriteRule* rule_for(const Exponents& e) const {
    for (const auto& r : rules_)
      if (e[r.generator] >= r.power) return &r;
    return nullptr;
  }

  bool is_normal(const Exponents& e) const {
    return rule_for(e) == nullptr && monomial_degree(*gens_, e) <= truncation_;
  }

  // Normal-form monomials of exactly `degree`, in graded-lex order.
  std::vector<Exponents> monomial_basis(int degree) const {
    std::vector<Exponents> out;
    if (degree < 0 || degree > truncation_) return out;
    Exponents e(gens_->size(), 0);
    enumerate(0, degree, e, out);
    std::sort(out.begin(), out.end(), GradedLexOrder{gens_});
    return out;
  }

 private:
  void enumerate(std::size_t i, int remaining, Exponents& e, std::vector<Exponents>& out) const {
    if (i == e.size()) {
      if (remaining == 0 && rule_for(e) == nullptr) out.push_back(e);
      return;
    }
    const int d = (*gens_)[i].degree;
    for (int k = 0; k * d <= remaining; ++k) {
      e[i] = k;
      enumerate(i + 1, remaining - k * d, e, out);
    }
    e[i] = 0;
  }

  Generators gens_;
  std::vector<RewriteRule> rules_;
  int truncation_;
  std::string name_;
};

// Rewrites `p` (whose generators must all occur in R) to R's normal form.
template <class Field>
GradedPoly<Field> poly_reduce(const GradedPoly<Field>& p, const RingPresentation& R) {
  const Field& field = p.field();
  GradedPoly<Field> work = embed(p, R.generators());
  GradedPoly<Field> out(R.generators(), field);
  const auto& gens = *R.generators();
  constexpr long kMaxSteps = 10'000'000;
  long steps = 0;
  while (!work.is_zero()) {
    GradedPoly<Field> next(R.generators(), field);
    for (const auto& [e, c] : work.terms()) {
      if (++steps > kMaxSteps) throw InternalInconsistency("rewriting did not terminate");
      if (monomial_degree(gens, e) > R.truncation()) continue;
      const RewriteRule* rule = R.rule_for(e);
      if (!rule) {
        out.add_term(e, c);
        continue;
      }
      Exponents rest = e;
      rest[rule->generator] -= rule->power;
      for (const auto& [f, q] : rule->replacement.terms()) {
        Exponents g = rest;
        for (std::size_t i = 0; i < g.size(); ++i) g[i] += f[i];
        next.add_term(std::move(g), c * field.from_rational(q));
      }
    }
    work = std::move(next);
  }
  return out;
}

template <class Field>
GradedPoly<Field> reduced_product(const GradedPoly<Field>& a, const GradedPoly<Field>& b,
                                  const RingPresentation& R) {
  return poly_reduce(GradedPoly<Field>::multiply(a, b, R.truncation()), R);
}

// Generator name -> image polynomial over the target presentation.
template <class Field>
using Assignment = std::map<std::string, GradedPoly<Field>>;

// Ring map determined by images of generators. Generators without an entry
// map to the generator of the same name in the target. Images must be
// homogeneous of the generator's degree (or zero).
template <class Field>
GradedPoly<Field> poly_substitute(const GradedPoly<Field>& p, const Assignment<Field>& assignment,
                                  const RingPresentation& target) {
  const auto& src = *p.generators();
  const Field& field = p.field();
  std::vector<GradedPoly<Field>> images;
  images.reserve(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto it = assignment.find(src[i].name);
    GradedPoly<Field> img = it != assignment.end()
                                ? poly_reduce(it->second, target)
                                : GradedPoly<Field>::generator(target.generators(), src[i].name, field);
    for (int d : img.degrees())
      if (d != src[i].degree)
        throw DegreeMismatch("image of " + src[i].name + " has degree " + std::to_string(d) +
                             ", expected " + std::to_string(src[i].degree));
    images.push_back(std::move(img));
  }
  for (const auto& [name, img] : assignment)
    if (!src.find(name)) throw PresentationMismatch("assignment for unknown generator " + name);

  // Powers are cached per generator; every product is reduced and truncated.
  std::vector<std::vector<GradedPoly<Field>>> powers(src.size());
  auto power = [&](std::size_t i, int k) -> const GradedPoly<Field>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(GradedPoly<Field>::constant(target.generators(), field.one(), field));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(reduced_product(cache.back(), images[i], target));
    return cache[k];
  };

  GradedPoly<Field> out(target.generators(), field);
  for (const auto& [e, c] : p.terms()) {
    GradedPoly<Field> term = GradedPoly<Field>::constant(target.generators(), c, field);
    for (std::size_t i = 0; i < e.size() && !term.is_zero(); ++i)
      if (e[i]) term = reduced_product(term, power(i, e[i]), target);
    out += term;
  }
  return out;
}

// Coefficientwise reduction Q -> F_p. Throws NonIntegralClass when some
// denominator is divisible by p.
inline FpPoly field_reduce(const QPoly& p, std::uint32_t prime) { return change_field(p, PrimeField(prime)); }

}  // namespace charclass
