#pragma once

// Symmetric polynomials in formal roots t_1..t_N and their rewriting in the
// elementary symmetric polynomials e_1..e_N.
//
// Two representations are supported:
//  * the monomial basis m_lambda (a map partition -> coefficient), used when
//    the symmetric polynomial is known combinatorially, e.g. prod Q(t_i);
//  * explicit polynomials in named root generators, used for small N.

#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "charclass/graded_poly.hpp"

namespace charclass {

using Partition = std::vector<int>;  // weakly decreasing, positive parts

// Partitions of n with at most `max_parts` parts, lexicographically
// decreasing ((n) first, (1^n) last).
inline std::vector<Partition> partitions(int n, int max_parts) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int remaining, int largest) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (int part = std::min(remaining, largest); part >= 1; --part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  if (n < 0) return out;
  rec(n, n);
  return out;
}

inline Partition conjugate(const Partition& lambda) {
  Partition out;
  if (lambda.empty()) return out;
  for (int j = 1; j <= lambda.front(); ++j) {
    int count = 0;
    for (int part : lambda) count += part >= j ? 1 : 0;
    out.push_back(count);
  }
  return out;
}

// Number of 0/1 matrices with the given row and column sums. Rows with equal
// remaining sums are interchangeable, so the state is a multiset.
class ZeroOneMatrixCounter {
 public:
  std::uint64_t count(const Partition& rows, const Partition& cols) {
    const int rs = std::accumulate(rows.begin(), rows.end(), 0);
    const int cs = std::accumulate(cols.begin(), cols.end(), 0);
    if (rs != cs) return 0;
    std::map<int, int> state;
    for (int r : rows)
      if (r > 0) ++state[r];
    return solve(cols, 0, state);
  }

 private:
  using State = std::map<int, int>;  // remaining row sum -> number of rows

  std::uint64_t solve(const Partition& cols, std::size_t j, const State& state) {
    if (j == cols.size()) return state.empty() ? 1 : 0;
    auto key = std::make_tuple(cols, j, state);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<std::pair<int, int>> groups(state.begin(), state.end());
    std::uint64_t total = 0;
    std::vector<int> take(groups.size(), 0);
    std::function<void(std::size_t, int, std::uint64_t)> distribute = [&](std::size_t g, int left,
                                                                          std::uint64_t ways) {
      if (g == groups.size()) {
        if (left != 0) return;
        State next;
        for (std::size_t i = 0; i < groups.size(); ++i) {
          const auto [value, n] = groups[i];
          if (n - take[i] > 0) next[value] += n - take[i];
          if (take[i] > 0 && value - 1 > 0) next[value - 1] += take[i];
        }
        total += ways * solve(cols, j + 1, next);
        return;
      }
      const int n = groups[g].second;
      for (int a = 0; a <= std::min(n, left); ++a) {
        take[g] = a;
        distribute(g + 1, left - a, ways * binomial(n, a));
      }
      take[g] = 0;
    };
    distribute(0, cols[j], 1);
    memo_.emplace(std::move(key), total);
    return total;
  }

  static std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
  }

  std::map<std::tuple<Partition, std::size_t, State>, std::uint64_t> memo_;
};

// A homogeneous symmetric polynomial of degree k in N roots, in the monomial
// basis. Returns its expansion in e_1..e_N as a map from e-exponent vectors
// (index j-1 holds the power of e_j) to coefficients.
//
// Triangular elimination: the lexicographically largest partition lambda of
// a remaining term is the leading monomial of e_{lambda'} with coefficient 1.
template <class Field>
std::map<Exponents, typename Field::value_type> monomial_to_elementary(
    std::map<Partition, typename Field::value_type, std::greater<>> f, int num_roots, const Field& field) {
  if (num_roots > 20 && !f.empty()) throw InvalidArgument("too many formal roots");
  std::map<Exponents, typename Field::value_type> out;
  if (f.empty()) return out;
  const int k = std::accumulate(f.begin()->first.begin(), f.begin()->first.end(), 0);
  const auto basis = partitions(k, num_roots);
  ZeroOneMatrixCounter counter;
  while (!f.empty()) {
    auto lead = f.begin();
    if (field.is_zero(lead->second)) {
      f.erase(lead);
      continue;
    }
    const Partition lambda = lead->first;
    const auto c = lead->second;
    if (static_cast<int>(lambda.size()) > num_roots)
      throw InternalInconsistency("partition longer than the number of roots");
    Exponents e(num_roots, 0);
    for (std::size_t i = 0; i < lambda.size(); ++i) {
      const int next = i + 1 < lambda.size() ? lambda[i + 1] : 0;
      e[i] = lambda[i] - next;  // e_{i+1} appears lambda_i - lambda_{i+1} times
    }
    if (auto it = out.find(e); it != out.end())
      it->second = it->second + c;
    else
      out.emplace(e, c);
    const Partition rows = conjugate(lambda);
    for (const auto& mu : basis) {
      if (mu > lambda) continue;  // dominance implies lex order
      const std::uint64_t n = counter.count(rows, mu);
      if (n == 0) continue;
      auto it = f.find(mu);
      const auto delta = c * field.from_int(static_cast<std::int64_t>(n));
      if (it == f.end())
        f.emplace(mu, -delta);
      else
        it->second = it->second - delta;
    }
    if (auto it = f.find(lambda); it != f.end()) {
      if (!field.is_zero(it->second)) throw InternalInconsistency("leading term did not cancel");
      f.erase(it);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = field.is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

// Elementary symmetric polynomial e_j in the root generators `roots`.
template <class Field>
GradedPoly<Field> elementary_in_roots(const Generators& roots, int j, const Field& field = {}) {
  const int n = static_cast<int>(roots->size());
  GradedPoly<Field> out(roots, field);
  if (j < 0 || j > n) return out;
  std::vector<int> pick(n, 0);
  std::fill(pick.end() - j, pick.end(), 1);
  do {
    out.add_term(Exponents(pick.begin(), pick.end()), field.one());
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

// Rewrites an explicit symmetric polynomial in roots t_1..t_N as a polynomial
// in `elementary` (whose i-th generator stands for e_{i+1}). Throws if the
// input is not symmetric.
template <class Field>
GradedPoly<Field> symmetric_to_elementary(GradedPoly<Field> f, const Generators& elementary) {
  const Generators& roots = f.generators();
  const Field field = f.field();
  const int n = static_cast<int>(roots->size());
  if (static_cast<int>(elementary->size()) < n)
    throw InvalidArgument("need one elementary generator per root");
  std::vector<GradedPoly<Field>> e;
  for (int j = 1; j <= n; ++j) e.push_back(elementary_in_roots(roots, j, field));

  GradedPoly<Field> out(elementary, field);
  while (!f.is_zero()) {
    const auto& [lead, c] = *f.terms().rbegin();
    Exponents ee(elementary->size(), 0);
    GradedPoly<Field> product = GradedPoly<Field>::constant(roots, c, field);
    for (int i = 0; i < n; ++i) {
      const int next = i + 1 < n ? lead[i + 1] : 0;
      const int power = lead[i] - next;
      if (power < 0) throw InvalidArgument("polynomial is not symmetric");
      ee[i] = power;
      if (power) product = product * e[i].pow(static_cast<unsigned>(power));
    }
    out.add_term(ee, c);
    f -= product;
  }
  return out;
}

}  // namespace charclass
