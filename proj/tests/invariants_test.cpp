#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "charclass/invariants.hpp"

using namespace charclass;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(CHARCLASS_DEFAULT_FIXTURE_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, ManifoldDescriptor> manifolds() {
  std::map<std::string, ManifoldDescriptor> out;
  for (auto& m : parse_manifolds(slurp("manifolds.tsv"))) out.emplace(m.name, m);
  return out;
}

ManifoldDescriptor make(int dim, std::vector<int> betti, int signature = 0) {
  ManifoldDescriptor m{"m", dim, {}, signature};
  for (int b : betti) m.betti.push_back(b);
  return m;
}

std::vector<int> odd_primes(int bound) {
  std::vector<int> out;
  for (int n = 3; n <= bound; n += 2) {
    bool prime = true;
    for (int d = 3; d * d <= n; d += 2) prime = prime && n % d != 0;
    if (prime) out.push_back(n);
  }
  return out;
}

}  // namespace

TEST(Manifold, EulerCharacteristic) {
  auto ms = manifolds();
  EXPECT_EQ(euler_characteristic(ms.at("S6")), 2);
  EXPECT_EQ(euler_characteristic(ms.at("CP2")), 3);
  EXPECT_EQ(euler_characteristic(ms.at("HP2")), 3);
  EXPECT_EQ(euler_characteristic(ms.at("T5")), 0);
  EXPECT_THROW(euler_characteristic(make(5, {1, 1, 0, 0, 0, 1})), InvalidDescriptor);
  EXPECT_THROW(euler_characteristic(make(3, {1, 0, 1})), InvalidDescriptor);
}

TEST(Manifold, AllFixturesValid) {
  for (const auto& [name, m] : manifolds()) EXPECT_NO_THROW(validate(m)) << name;
}

TEST(Manifold, Kervaire) {
  auto ms = manifolds();
  EXPECT_EQ(kervaire_semicharacteristic(ms.at("S1")), 1);
  EXPECT_EQ(kervaire_semicharacteristic(ms.at("S5")), 1);
  EXPECT_EQ(kervaire_semicharacteristic(ms.at("T5")), 0);
  EXPECT_THROW(kervaire_semicharacteristic(ms.at("S3")), InvalidArgument);
}

TEST(Manifold, ValidatorsRejectMutations) {
  int rejected = 0;
  for (const auto& [name, m] : manifolds()) {
    std::vector<ManifoldDescriptor> mutants;
    for (int i = 0; i <= m.dim; ++i) {
      auto a = m;
      a.betti[i] += 1;  // off-middle: duality; middle: a parity
      mutants.push_back(a);
      auto b = m;
      b.betti[i] = -1;
      mutants.push_back(b);
    }
    for (int d : {-1, 1}) {
      auto s = m;
      s.signature += d;
      mutants.push_back(s);
    }
    auto shorter = m;
    shorter.betti.pop_back();
    mutants.push_back(shorter);
    for (const auto& x : mutants) {
      EXPECT_THROW(validate(x), InvalidDescriptor) << name;
      ++rejected;
    }
  }
  EXPECT_GT(rejected, 50);
}

TEST(EulerSubgroup, Cases) {
  EXPECT_EQ(euler_subgroup(3), 0);
  EXPECT_EQ(euler_subgroup(6), 2);
  EXPECT_EQ(euler_subgroup(4), 1);
  EXPECT_THROW(euler_subgroup(0), InvalidArgument);
  // the fixtures realise the generators
  auto ms = manifolds();
  EXPECT_EQ(euler_characteristic(ms.at("S2")), 2);
  EXPECT_EQ(euler_characteristic(ms.at("CP2")) - euler_characteristic(ms.at("S4")), 1);
}

TEST(Pi0, Reports) {
  const auto table = parse_bordism_table(slurp("bordism.tsv"));
  auto r = pi0_report(1, table);
  EXPECT_EQ(r.group, "Z/2");
  EXPECT_EQ(r.splitting, SplittingKind::kervaire);
  r = pi0_report(2, table);
  EXPECT_EQ(r.group, "Z");
  EXPECT_EQ(to_string(r.splitting), "chi/2");
  r = pi0_report(3, table);
  EXPECT_EQ(r.group, "0");
  EXPECT_EQ(r.splitting, SplittingKind::none_needed);
  r = pi0_report(4, table);
  EXPECT_EQ(r.group, "Z⊕Z");
  EXPECT_EQ(to_string(r.splitting), "(sign+chi)/2");
  EXPECT_EQ(pi0_report(5, table).group, "Z/2⊕Z/2");
  EXPECT_THROW(pi0_report(9, table), ConfigurationError);
  EXPECT_EQ(default_bordism_table().groups, table.groups);
}

TEST(Pi0, SplittingValues) {
  auto ms = manifolds();
  EXPECT_EQ(splitting_value(ms.at("CP2")).value, 2);
  EXPECT_EQ(splitting_value(ms.at("S2")).value, 1);
  EXPECT_EQ(splitting_value(ms.at("S1")).value, 1);
  EXPECT_EQ(splitting_value(ms.at("S1")).kind, SplittingKind::kervaire);
  EXPECT_THROW(splitting_value(ms.at("S3")), NoSplittingNeeded);
}

TEST(Adams, Values) {
  EXPECT_EQ(adams_m(0), 1);
  EXPECT_EQ(adams_m(2), 12);
  EXPECT_EQ(adams_m(4), 720);
  EXPECT_EQ(adams_m(8), BigInt(256) * 81 * 25 * 7);
  EXPECT_THROW(adams_m(-1), InvalidArgument);
}

TEST(Adams, ValuationsAndDivisibility) {
  for (int r = 1; r <= 60; ++r) {
    EXPECT_EQ(adams_m(r) % adams_m(r - 1), 0) << r;
    BigInt rest = adams_m(r);
    for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61}) {
      EXPECT_EQ(valuation(adams_m(r), p), r / (p - 1)) << r << " " << p;
      while (rest % p == 0) rest /= p;
    }
    EXPECT_EQ(rest, 1) << r;
  }
}

TEST(Primes, VanishingExamples) {
  const std::vector<std::uint32_t> k1 = {3, 5, 7, 11, 13, 17, 19};
  EXPECT_EQ(vanishing_primes(1, 20), k1);
  const auto k5 = vanishing_primes(5, 40);
  EXPECT_EQ(k5, (std::vector<std::uint32_t>{11, 13, 17, 19, 23, 29, 31, 37}));
  const auto k6 = vanishing_primes(6, 1000);
  EXPECT_EQ(k6.front(), 13u);
  EXPECT_EQ(std::count(k6.begin(), k6.end(), 691u), 0);
  EXPECT_EQ(std::count(k6.begin(), k6.end(), 701u), 1);
  EXPECT_THROW(vanishing_primes(0, 10), InvalidArgument);
}

TEST(Primes, Tsv) {
  EXPECT_EQ(primes_tsv(1, 2, 12), "k\tprimes\n1\t3 5 7 11\n2\t5 7 11\n");
}

TEST(Kappa, Values) {
  EXPECT_EQ(kappa_coefficient_unit(1, 3).value, 1);
  EXPECT_EQ(kappa_coefficient_unit(2, 5).value, 1);
  const auto k4 = kappa_coefficient_unit(4, 3);
  EXPECT_EQ(k4.value, 3);
  EXPECT_FALSE(k4.unit_mod_p);
  EXPECT_TRUE(k4.p_integral);
  EXPECT_FALSE(k4.sign_known);
  for (int p : odd_primes(60))
    if (p != 3) EXPECT_TRUE(kappa_coefficient_unit(4, p).unit_mod_p) << p;
}

TEST(Kappa, UnitOnEveryVanishingPrime) {
  for (int k = 1; k <= 10; ++k)
    for (auto p : vanishing_primes(k, 100)) EXPECT_TRUE(kappa_coefficient_unit(k, p).unit_mod_p) << k << " " << p;
}

TEST(Wu, VanishingDegrees) {
  EXPECT_EQ(wu_vanishing_degrees(3, 5), (std::vector<int>{1, 2, 3, 4, 5}));
  EXPECT_EQ(wu_vanishing_degrees(5, 8), (std::vector<int>{2, 4, 6, 8}));
  EXPECT_EQ(wu_vanishing_degrees(7, 10), (std::vector<int>{3, 6, 9}));
  EXPECT_THROW(wu_vanishing_degrees(2, 4), InvalidArgument);
}

TEST(Wu, CrossConsistentWithBernoulliPrimes) {
  const auto all = wu_vanishing_degrees(3, 30);
  EXPECT_EQ(all.size(), 30u);
  const auto k1 = vanishing_primes(1, 100);
  EXPECT_EQ(k1.front(), 3u);
  EXPECT_EQ(wu_vanishing_degrees(3, 1).front(), 1);
}

TEST(Fixtures, ParseErrors) {
  EXPECT_THROW(parse_bordism_table("x Z\n"), ParseError);
  EXPECT_THROW(parse_bordism_table("1\n"), ParseError);
  EXPECT_THROW(parse_bordism_table("1 Z\n1 0\n"), ParseError);
  EXPECT_THROW(parse_manifolds("S1 1 1,x 0\n"), ParseError);
  EXPECT_THROW(parse_manifolds("S1 1\n"), ParseError);
}
