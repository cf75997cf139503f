#pragma once

// Random elements for the property suites (unit tests and verify-paper).
// Callers fix the seeds so failures reproduce.

#include <random>

#include "charclass/graded_poly.hpp"
#include "charclass/power_series.hpp"

namespace charclass::prop {

inline Rational random_rational(std::mt19937_64& rng, int num_range = 9, int den_range = 5) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_range);
  return Rational(num(rng), den(rng));
}

template <class Field>
typename Field::value_type random_scalar(std::mt19937_64& rng, const Field& field) {
  if constexpr (std::is_same_v<Field, RationalField>)
    return random_rational(rng);
  else
    return field.from_int(std::uniform_int_distribution<int>(0, static_cast<int>(field.prime) - 1)(rng));
}

template <class Field = RationalField>
GradedPoly<Field> random_poly(std::mt19937_64& rng, const Generators& gens, const Field& field = {},
                              int max_terms = 4, int max_exp = 2) {
  GradedPoly<Field> p(gens, field);
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> exp(0, max_exp);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Exponents e(gens->size());
    for (auto& x : e) x = exp(rng);
    p.add_term(std::move(e), random_scalar(rng, field));
  }
  return p;
}

inline PowerSeries<> random_unit_series(std::mt19937_64& rng, int order) {
  PowerSeries<> s(order);
  Rational c0 = 0;
  while (c0 == 0) c0 = random_rational(rng);
  s.set(0, c0);
  for (int k = 1; k <= order; ++k) s.set(k, random_rational(rng));
  return s;
}

}  // namespace charclass::prop
