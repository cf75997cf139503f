#pragma once

// Second route to multiplicative sequences, kept apart from the root
// expansion in genus.hpp:
//
//   log prod_i Q(t_i) = sum_j a_j s_j,   log Q(x) = sum_j a_j x^j,
//
// with the power sums s_j expressed through Newton's identities in
// e_j = p_j, then exponentiated in the graded ring.

#include "charclass/genus.hpp"

namespace charclass::oracle {

// log Q for Q(0) = 1, via log(1+u) = sum (-1)^{n+1} u^n / n.
inline PowerSeries<> log_series(const PowerSeries<>& q) {
  if (q[0] != 1) throw InvalidArgument("log needs constant term 1");
  const int n = q.order();
  PowerSeries<> u = q;
  u.set(0, 0);
  PowerSeries<> out(n), power = PowerSeries<>::monomial(0, 1, n);
  for (int k = 1; k <= n; ++k) {
    power = multiply(power, u);
    out = out + Rational(k % 2 == 1 ? 1 : -1, k) * power;
  }
  return out;
}

// Power sums s_1..s_kmax in p_1..p_m (p_j = 0 for j > m).
inline std::vector<QPoly> power_sums(int m, int kmax) {
  const Generators gens = pontrjagin_generators(m);
  auto e = [&](int j) { return j <= m ? QPoly::generator(gens, "p" + std::to_string(j)) : QPoly(gens); };
  std::vector<QPoly> s(kmax + 1, QPoly(gens));
  for (int j = 1; j <= kmax; ++j) {
    QPoly acc(gens);
    for (int i = 1; i < j; ++i) {
      const QPoly t = e(i) * s[j - i];
      acc = i % 2 == 1 ? acc + t : acc - t;
    }
    const QPoly last = e(j) * Rational(j);
    acc = j % 2 == 1 ? acc + last : acc - last;
    s[j] = acc;
  }
  return s;
}

inline SequencePolys multiplicative_sequence_newton(const PowerSeries<>& q, int m, int max_degree) {
  const int kmax = max_degree / 4;
  const auto a = log_series(q.truncated(kmax));
  const auto s = power_sums(m, kmax);
  const Generators gens = pontrjagin_generators(m);
  QPoly exponent(gens);
  for (int j = 1; j <= kmax; ++j) exponent += s[j] * a[j];
  // exp(P) = sum P^n / n!; P has no constant term so n <= kmax suffices.
  QPoly total = QPoly::constant(gens, 1);
  QPoly power = QPoly::constant(gens, 1);
  Rational inv_fact = 1;
  for (int n = 1; n <= kmax; ++n) {
    power = QPoly::multiply(power, exponent, max_degree);
    inv_fact /= n;
    total += power * inv_fact;
  }
  SequencePolys out{gens, {}};
  for (int k = 0; k <= kmax; ++k) out.by_degree.emplace(4 * k, total.component(4 * k));
  return out;
}

}  // namespace charclass::oracle
