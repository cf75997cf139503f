#pragma once

// Bernoulli numbers, genus power series and multiplicative sequences in the
// Pontrjagin classes.
//
// A power series Q(x) in the Pontrjagin-root variable x (x has degree 4)
// determines polynomials K_k(p_1, ..., p_m) by expanding prod_i Q(t_i) over
// formal roots t_i and rewriting the symmetric result in the elementary
// symmetric functions e_j = p_j.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charclass/graded_poly.hpp"
#include "charclass/power_series.hpp"
#include "charclass/presentation.hpp"
#include "charclass/symmetric.hpp"

namespace charclass {

// B_n with B_1 = -1/2; only n = 1 and even n are accepted.
// Akiyama-Tanigawa transform of 1/(m+1); O(n^2) exact operations.
inline Rational bernoulli(int n) {
  if (n < 0) throw InvalidArgument("Bernoulli index must be nonnegative");
  if (n == 1) return Rational(-1, 2);
  if (n % 2 == 1) throw InvalidArgument("odd Bernoulli index " + std::to_string(n) + " is not supported");
  std::vector<Rational> a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = Rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
  }
  return a[0];
}

inline BigInt factorial(int n) {
  BigInt r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

enum class GenusKind { L, Ltilde, inv_linear, total_p };

inline std::string to_string(GenusKind kind) {
  switch (kind) {
    case GenusKind::L: return "L";
    case GenusKind::Ltilde: return "Ltilde";
    case GenusKind::inv_linear: return "inv_linear";
    case GenusKind::total_p: return "total_p";
  }
  return "?";
}

inline GenusKind parse_genus_kind(const std::string& s) {
  if (s == "L") return GenusKind::L;
  if (s == "Ltilde") return GenusKind::Ltilde;
  if (s == "inv_linear") return GenusKind::inv_linear;
  if (s == "total_p") return GenusKind::total_p;
  throw InvalidArgument("unknown genus kind " + s);
}

// L:        sqrt(x) coth(sqrt(x))     = sum 2^{2k} B_{2k}/(2k)! x^k
// Ltilde:   sqrt(x) coth(sqrt(x)/2)   = sum 2 B_{2k}/(2k)! x^k
// inv_linear: (1+x)^{-1};  total_p: 1+x
inline PowerSeries<> genus_series(GenusKind kind, int order) {
  PowerSeries<> s(order);
  for (int k = 0; k <= order; ++k) {
    switch (kind) {
      case GenusKind::L:
        s.set(k, Rational(BigInt(1) << (2 * k)) * bernoulli(2 * k) / Rational(factorial(2 * k)));
        break;
      case GenusKind::Ltilde:
        s.set(k, 2 * bernoulli(2 * k) / Rational(factorial(2 * k)));
        break;
      case GenusKind::inv_linear:
        s.set(k, k % 2 == 0 ? 1 : -1);
        break;
      case GenusKind::total_p:
        s.set(k, k <= 1 ? 1 : 0);
        break;
    }
  }
  return s;
}

inline Generators pontrjagin_generators(int m) {
  std::vector<Generator> gens;
  for (int i = 1; i <= m; ++i) gens.push_back({"p" + std::to_string(i), 4 * i});
  return make_generators(std::move(gens));
}

// Homogeneous pieces K_k (degree 4k) of a genus, over p_1..p_m.
struct SequencePolys {
  Generators gens;
  std::map<int, QPoly> by_degree;  // 4k -> K_k

  const QPoly& component(int degree) const {
    auto it = by_degree.find(degree);
    if (it == by_degree.end()) throw InvalidArgument("degree " + std::to_string(degree) + " not computed");
    return it->second;
  }

  QPoly total() const {
    QPoly out(gens);
    for (const auto& [d, k] : by_degree) out += k;
    return out;
  }
};

namespace detail {

// prod_{i=1..N} Q(t_i) in degree k, in the monomial basis: the coefficient of
// m_lambda is q_0^{N - len(lambda)} prod_j q_{lambda_j}.
inline std::map<Partition, Rational, std::greater<>> root_product_monomials(const PowerSeries<>& q, int k,
                                                                             int num_roots) {
  std::map<Partition, Rational, std::greater<>> f;
  for (const auto& lambda : partitions(k, num_roots)) {
    Rational c = 1;
    for (int part : lambda) c *= q[part];
    const int missing = num_roots - static_cast<int>(lambda.size());
    for (int i = 0; i < missing; ++i) c *= q[0];
    if (c != 0) f.emplace(lambda, c);
  }
  return f;
}

inline SequencePolys expand_root_product(const PowerSeries<>& q, int num_p, int max_degree, int num_roots) {
  if (num_p < 1) throw InvalidArgument("need at least one Pontrjagin class");
  if (max_degree < 0) throw InvalidArgument("max degree must be nonnegative");
  const int kmax = max_degree / 4;
  if (q.order() < kmax) throw InvalidArgument("series order too small for the requested degree");
  SequencePolys out{pontrjagin_generators(num_p), {}};
  RationalField field;
  for (int k = 0; k <= kmax; ++k) {
    QPoly poly(out.gens);
    if (k == 0) {
      Rational c = 1;
      for (int i = 0; i < num_roots; ++i) c *= q[0];
      poly.add_term(Exponents(num_p, 0), c);
    } else {
      auto in_e = monomial_to_elementary(root_product_monomials(q, k, num_roots), num_roots, field);
      for (const auto& [ee, c] : in_e) {
        // e_j -> p_j for j <= num_p, e_j -> 0 beyond.
        bool vanishes = false;
        Exponents pe(num_p, 0);
        for (std::size_t j = 0; j < ee.size(); ++j) {
          if (ee[j] == 0) continue;
          if (static_cast<int>(j) >= num_p) {
            vanishes = true;
            break;
          }
          pe[j] = ee[j];
        }
        if (!vanishes) poly.add_term(std::move(pe), c);
      }
    }
    out.by_degree.emplace(4 * k, std::move(poly));
  }
  return out;
}

}  // namespace detail

// Multiplicative sequence of Q (requires Q(0) = 1) up to degree max_degree,
// using ceil(max_degree/4) formal roots unless `num_roots` overrides it.
inline SequencePolys multiplicative_sequence(const PowerSeries<>& q, int num_p, int max_degree,
                                             std::optional<int> num_roots = std::nullopt) {
  if (q.order() < 0 || q[0] != 1)
    throw InvalidArgument("multiplicative sequences need Q(0) = 1; use genus_product for other constant terms");
  const int roots = num_roots.value_or(std::max(1, (max_degree + 3) / 4));
  if (roots < 1) throw InvalidArgument("need at least one formal root");
  return detail::expand_root_product(q, num_p, max_degree, roots);
}

// prod_{i=1..m} Q(t_i) for exactly m roots (a rank-2m or rank-(2m+1) class);
// the degree-0 part is Q(0)^m.
inline SequencePolys genus_product(const PowerSeries<>& q, int m, int max_degree) {
  if (m < 1) throw InvalidArgument("genus_product needs m >= 1");
  return detail::expand_root_product(q, m, max_degree, m);
}

struct ScalingReport {
  int m = 0;
  int k = 0;
  Rational ratio;
  bool is_power_of_two = false;
  int exponent = 0;          // meaningful when is_power_of_two
  int reference_exponent = 0;  // m - k, the exponent quoted for comparison
  QPoly ltilde_component;
  QPoly l_component;
};

inline bool power_of_two_exponent(const Rational& q, int& exponent) {
  if (q <= 0) return false;
  BigInt num = numerator_of(q), den = denominator_of(q);
  int e = 0;
  while (num % 2 == 0) num /= 2, ++e;
  while (den % 2 == 0) den /= 2, --e;
  if (num != 1 || den != 1) return false;
  exponent = e;
  return true;
}

// Compares the degree-4k part of prod_{i<=m} Ltilde(t_i) with L_k over
// p_1..p_m. The two must be proportional; the ratio is measured, not assumed.
inline ScalingReport scaling_relation_report(int m, int k) {
  if (m < 1 || k < 1) throw InvalidArgument("scaling relation needs m >= 1 and k >= 1");
  const int degree = 4 * k;
  const auto ltilde = genus_product(genus_series(GenusKind::Ltilde, k), m, degree);
  const auto l = multiplicative_sequence(genus_series(GenusKind::L, k), m, degree);
  ScalingReport r;
  r.m = m;
  r.k = k;
  r.reference_exponent = m - k;
  r.ltilde_component = ltilde.component(degree);
  r.l_component = l.component(degree);
  if (r.l_component.is_zero()) throw InvalidArgument("L_k vanishes on BSO(2m) for this (m, k)");
  const auto& [mono, lc] = *r.l_component.terms().begin();
  r.ratio = r.ltilde_component.coefficient(mono) / lc;
  if (!(r.ltilde_component == r.l_component * r.ratio))
    throw InternalInconsistency("Ltilde and L components are not proportional");
  r.is_power_of_two = power_of_two_exponent(r.ratio, r.exponent);
  return r;
}

}  // namespace charclass
