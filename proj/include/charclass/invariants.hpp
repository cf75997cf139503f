#pragma once

// Invariants of closed oriented manifolds given by Betti numbers and
// signature, the resulting description of pi_0(MTSO(n)), and the prime
// tables behind the two mod-p vanishing results.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "charclass/genus.hpp"

namespace charclass {

struct ManifoldDescriptor {
  std::string name;
  int dim = 0;
  std::vector<BigInt> betti;  // b_0 .. b_dim
  BigInt signature = 0;
};

inline BigInt euler_characteristic_unchecked(const ManifoldDescriptor& m) {
  BigInt chi = 0;
  for (std::size_t i = 0; i < m.betti.size(); ++i) chi += i % 2 == 0 ? m.betti[i] : BigInt(-m.betti[i]);
  return chi;
}

inline void validate(const ManifoldDescriptor& m) {
  const std::string who = m.name.empty() ? "descriptor" : m.name;
  if (m.dim < 0) throw InvalidDescriptor(who + ": negative dimension");
  if (static_cast<int>(m.betti.size()) != m.dim + 1)
    throw InvalidDescriptor(who + ": expected " + std::to_string(m.dim + 1) + " Betti numbers");
  for (const auto& b : m.betti)
    if (b < 0) throw InvalidDescriptor(who + ": negative Betti number");
  if (m.betti.front() < 1) throw InvalidDescriptor(who + ": b_0 must be positive");
  for (int i = 0; i <= m.dim; ++i)
    if (m.betti[i] != m.betti[m.dim - i])
      throw InvalidDescriptor(who + ": Poincare duality fails, b_" + std::to_string(i) + " != b_" +
                              std::to_string(m.dim - i));
  if (m.dim % 4 != 0 && m.signature != 0) throw InvalidDescriptor(who + ": signature must vanish unless 4 | dim");
  const BigInt chi = euler_characteristic_unchecked(m);
  if (m.dim % 4 == 0) {
    if (m.signature > m.betti[m.dim / 2] || -m.signature > m.betti[m.dim / 2])
      throw InvalidDescriptor(who + ": |signature| exceeds the middle Betti number");
    if ((m.signature + chi) % 2 != 0) throw InvalidDescriptor(who + ": signature + Euler characteristic is odd");
  }
  if (m.dim % 4 == 2 && chi % 2 != 0) throw InvalidDescriptor(who + ": Euler characteristic is odd");
}

inline BigInt euler_characteristic(const ManifoldDescriptor& m) {
  validate(m);
  return euler_characteristic_unchecked(m);
}

// sum_i b_{2i} mod 2, for dim = 1 mod 4.
inline int kervaire_semicharacteristic(const ManifoldDescriptor& m) {
  validate(m);
  if (m.dim % 4 != 1) throw InvalidArgument("Kervaire semi-characteristic needs dim = 1 mod 4");
  BigInt s = 0;
  for (int i = 0; 2 * i <= (m.dim - 1); ++i) s += m.betti[2 * i];
  return static_cast<int>(s % 2);
}

// Nonnegative generator of the subgroup of Z spanned by Euler
// characteristics of closed oriented n-manifolds.
inline int euler_subgroup(int n) {
  if (n < 1) throw InvalidArgument("euler_subgroup needs n >= 1");
  if (n % 2 == 1) return 0;
  return n % 4 == 2 ? 2 : 1;
}

// Z/k written as a group: Z/0 = Z, Z/1 = 0.
inline std::string cyclic_group(int k) {
  if (k == 0) return "Z";
  if (k == 1) return "0";
  return "Z/" + std::to_string(k);
}

struct BordismTable {
  std::map<int, std::string> groups;  // n -> "Z", "0", "Z/2", ...

  const std::string& at(int n) const {
    auto it = groups.find(n);
    if (it == groups.end()) throw ConfigurationError("bordism table has no entry for n = " + std::to_string(n));
    return it->second;
  }
};

// "n<TAB or spaces>group" per line, '#' comments.
inline BordismTable parse_bordism_table(const std::string& text) {
  BordismTable t;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::istringstream ls(hash == std::string::npos ? raw : raw.substr(0, hash));
    std::string n, g;
    if (!(ls >> n)) continue;
    if (!(ls >> g)) throw ParseError("bordism line " + std::to_string(line) + ": expected 'n group'");
    int k = 0;
    try {
      k = std::stoi(n);
    } catch (const std::logic_error&) {
      throw ParseError("bordism line " + std::to_string(line) + ": bad dimension '" + n + "'");
    }
    if (!t.groups.emplace(k, g).second) throw ParseError("bordism line " + std::to_string(line) + ": duplicate n");
  }
  return t;
}

// Oriented bordism in low degrees (Thom, Wall).
inline BordismTable default_bordism_table() {
  return parse_bordism_table("0 Z\n1 0\n2 0\n3 0\n4 Z\n5 Z/2\n6 0\n7 0\n");
}

enum class SplittingKind { half_euler, half_signature_plus_euler, kervaire, none_needed };

inline std::string to_string(SplittingKind k) {
  switch (k) {
    case SplittingKind::half_euler: return "chi/2";
    case SplittingKind::half_signature_plus_euler: return "(sign+chi)/2";
    case SplittingKind::kervaire: return "kerv";
    case SplittingKind::none_needed: return "none";
  }
  return "?";
}

inline SplittingKind splitting_kind(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return SplittingKind::half_signature_plus_euler;
    case 1: return SplittingKind::kervaire;
    case 2: return SplittingKind::half_euler;
    default: return SplittingKind::none_needed;
  }
}

// 0 -> Z/eul_{n+1} -> pi_0(MTSO(n)) -> Omega_n -> 0, split by the named map.
struct Pi0Report {
  int n = 0;
  int eul = 0;            // eul_{n+1}
  std::string kernel;     // Z/eul_{n+1}
  std::string bordism;    // Omega_n
  SplittingKind splitting = SplittingKind::none_needed;
  std::string group;      // pi_0 assembled
};

inline Pi0Report pi0_report(int n, const BordismTable& table) {
  if (n < 0) throw InvalidArgument("pi0_report needs n >= 0");
  Pi0Report r;
  r.n = n;
  r.eul = euler_subgroup(n + 1);
  r.kernel = cyclic_group(r.eul);
  r.bordism = table.at(n);
  r.splitting = splitting_kind(n);
  if (r.kernel == "0") r.group = r.bordism;
  else if (r.bordism == "0") r.group = r.kernel;
  else r.group = r.kernel + "⊕" + r.bordism;  // the sequence splits
  return r;
}

struct SplittingValue {
  SplittingKind kind;
  BigInt value;  // in Z, or 0/1 for kerv
};

inline SplittingValue splitting_value(const ManifoldDescriptor& m) {
  const BigInt chi = euler_characteristic(m);
  const auto kind = splitting_kind(m.dim);
  switch (kind) {
    case SplittingKind::half_euler: return {kind, chi / 2};
    case SplittingKind::half_signature_plus_euler: return {kind, (m.signature + chi) / 2};
    case SplittingKind::kervaire: return {kind, kervaire_semicharacteristic(m)};
    case SplittingKind::none_needed: break;
  }
  throw NoSplittingNeeded("dimension " + std::to_string(m.dim) + " = 3 mod 4 needs no splitting map");
}

inline std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
  std::vector<std::uint32_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(bound + 1, false);
  for (std::uint32_t p = 2; p <= bound; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (std::uint64_t q = std::uint64_t{p} * p; q <= bound; q += p) composite[q] = true;
  }
  return out;
}

// m(r) = prod_p p^{floor(r/(p-1))}
inline BigInt adams_m(int r) {
  if (r < 0) throw InvalidArgument("adams_m needs r >= 0");
  BigInt m = 1;
  for (auto p : primes_up_to(static_cast<std::uint32_t>(r + 1)))
    for (int e = 0; e < r / static_cast<int>(p - 1); ++e) m *= p;
  return m;
}

// Odd p <= bound with p >= 2k and p not dividing the numerator of |B_{2k}|.
inline std::vector<std::uint32_t> vanishing_primes(int k, std::uint32_t bound) {
  if (k < 1) throw InvalidArgument("vanishing_primes needs k >= 1");
  const BigInt num = abs(numerator_of(bernoulli(2 * k)));
  std::vector<std::uint32_t> out;
  for (auto p : primes_up_to(bound))
    if (p != 2 && static_cast<int>(p) >= 2 * k && num % p != 0) out.push_back(p);
  return out;
}

struct KappaCoefficient {
  Rational value;           // |B_{2k}| / (2k)! * m(2k)
  bool sign_known = false;  // the sign is left open
  bool p_integral = false;
  bool unit_mod_p = false;
};

inline KappaCoefficient kappa_coefficient_unit(int k, std::uint32_t p) {
  if (k < 1) throw InvalidArgument("kappa_coefficient_unit needs k >= 1");
  require_odd_prime(p);
  KappaCoefficient c;
  const Rational b = bernoulli(2 * k);
  c.value = (b < 0 ? Rational(-b) : b) / Rational(factorial(2 * k)) * Rational(adams_m(2 * k));
  const int v = valuation(c.value, p);
  c.p_integral = v >= 0;
  c.unit_mod_p = v == 0;
  return c;
}

// k <= kmax with k = r i, r = (p-1)/2, i >= 1.
inline std::vector<int> wu_vanishing_degrees(std::uint32_t p, int kmax) {
  require_odd_prime(p);
  const int r = static_cast<int>(p - 1) / 2;
  std::vector<int> out;
  for (int k = r; k <= kmax; k += r) out.push_back(k);
  return out;
}

// "k<TAB>p p p" rows.
inline std::string primes_tsv(int kmin, int kmax, std::uint32_t bound) {
  std::ostringstream out;
  out << "k\tprimes\n";
  for (int k = kmin; k <= kmax; ++k) {
    out << k << '\t';
    const auto ps = vanishing_primes(k, bound);
    for (std::size_t i = 0; i < ps.size(); ++i) out << (i ? " " : "") << ps[i];
    out << '\n';
  }
  return out.str();
}

// Manifold fixtures: "name dim b0,b1,...,bn signature" per line.
inline std::vector<ManifoldDescriptor> parse_manifolds(const std::string& text) {
  std::vector<ManifoldDescriptor> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::istringstream ls(hash == std::string::npos ? raw : raw.substr(0, hash));
    ManifoldDescriptor m;
    std::string betti, sig;
    if (!(ls >> m.name)) continue;
    if (!(ls >> m.dim >> betti >> sig)) throw ParseError("manifold line " + std::to_string(line) + ": expected 'name dim betti signature'");
    std::istringstream bs(betti);
    std::string b;
    try {
      while (std::getline(bs, b, ',')) m.betti.push_back(BigInt(b));
      m.signature = BigInt(sig);
    } catch (const std::exception&) {
      throw ParseError("manifold line " + std::to_string(line) + ": bad integer");
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace charclass
