#pragma once

// The acceptance suite behind `charclass verify-paper`. Each criterion
// recomputes its evidence from scratch with fixed seeds, so the rendered
// report is byte-deterministic.

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charclass/fixtures.hpp"
#include "charclass/genus.hpp"
#include "charclass/invariants.hpp"
#include "charclass/oracle/newton.hpp"
#include "charclass/oracle/random.hpp"
#include "charclass/steenrod.hpp"
#include "charclass/thom.hpp"

namespace charclass {

enum class Status { pass, warn, fail };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::warn: return "WARN";
    case Status::fail: return "FAIL";
  }
  return "?";
}

struct CriterionResult {
  int id = 0;
  std::string title;
  std::string anchor;  // what is being reproduced
  Status status = Status::pass;
  std::vector<std::string> notes;     // evidence lines
  std::vector<std::string> warnings;  // discrepancies reported, not failed
};

struct AcceptanceReport {
  std::vector<CriterionResult> rows;

  bool ok() const {
    for (const auto& r : rows)
      if (r.status == Status::fail) return false;
    return true;
  }

  std::string render() const {
    std::ostringstream out;
    for (const auto& r : rows) {
      out << "[" << to_string(r.status) << "] " << r.id << ". " << r.title << " (" << r.anchor << ")\n";
      for (const auto& n : r.notes) out << "       " << n << "\n";
      for (const auto& w : r.warnings) out << "       warning: " << w << "\n";
    }
    std::size_t pass = 0, warn = 0, fail = 0;
    for (const auto& r : rows) (r.status == Status::pass ? pass : r.status == Status::warn ? warn : fail)++;
    out << "summary: " << pass << " pass, " << warn << " warn, " << fail << " fail\n";
    return out.str();
  }
};

namespace acceptance {

// Records a check; the first failure flips the status.
class Recorder {
 public:
  explicit Recorder(CriterionResult& r) : r_(r) {}
  bool check(bool ok, const std::string& what) {
    if (!ok) {
      r_.status = Status::fail;
      r_.notes.push_back("failed: " + what);
    }
    return ok;
  }
  void note(const std::string& s) { r_.notes.push_back(s); }
  void warn(const std::string& s) {
    if (r_.status == Status::pass) r_.status = Status::warn;
    r_.warnings.push_back(s);
  }

 private:
  CriterionResult& r_;
};

// Runs a body, turning any exception into a failure.
inline CriterionResult run(int id, std::string title, std::string anchor, const std::function<void(Recorder&)>& body) {
  CriterionResult r{id, std::move(title), std::move(anchor), Status::pass, {}, {}};
  Recorder rec(r);
  try {
    body(rec);
  } catch (const std::exception& e) {
    r.status = Status::fail;
    r.notes.push_back(std::string("exception: ") + e.what());
  }
  return r;
}

inline CriterionResult l_class_table() {
  return run(1, "L-class table", "L-genus as a multiplicative sequence", [](Recorder& rec) {
    const auto l = multiplicative_sequence(genus_series(GenusKind::L, 4), 4, 16);
    const auto newton = oracle::multiplicative_sequence_newton(genus_series(GenusKind::L, 4), 4, 16);
    const auto& g = l.gens;
    rec.check(l.component(4) == parse_poly("1/3*p1", g), "L_1 = p1/3");
    rec.check(l.component(8) == parse_poly("7/45*p2 - 1/45*p1^2", g), "L_2 = (7p2 - p1^2)/45");
    for (int d = 0; d <= 16; d += 4)
      rec.check(l.component(d) == newton.component(d), "Newton oracle agrees in degree " + std::to_string(d));
    rec.note("L_1 = " + l.component(4).to_string() + "; L_2 = " + l.component(8).to_string());
    const auto l3 = multiplicative_sequence(genus_series(GenusKind::L, 12), 1, 48);
    for (int k = 1; k <= 12; ++k) {
      const Rational expected = Rational(BigInt(1) << (2 * k)) * bernoulli(2 * k) / Rational(factorial(2 * k));
      const Rational got = l3.component(4 * k).coefficient(Exponents{k});
      rec.check(got == expected && got != 0, "p1^" + std::to_string(k) + " coefficient of L_" + std::to_string(k));
    }
    rec.note("p1^k coefficients on BSO(3) equal 2^{2k} B_{2k}/(2k)! and are nonzero for k <= 12");
  });
}

inline CriterionResult scaling_relation() {
  return run(2, "Ltilde/L scaling relation", "power-of-two relation between the two genera", [](Recorder& rec) {
    std::ostringstream mismatches;
    int count = 0;
    for (int m = 1; m <= 3; ++m) {
      for (int k = 1; k <= 3; ++k) {
        const auto r = scaling_relation_report(m, k);
        if (!rec.check(r.is_power_of_two, "power-of-two ratio at m=" + std::to_string(m) + ", k=" + std::to_string(k)))
          continue;
        if (r.exponent != r.reference_exponent) {
          ++count;
          mismatches << (count > 1 ? ", " : "") << "(m=" << m << ",k=" << k << ": " << r.exponent << " vs "
                     << r.reference_exponent << ")";
        }
      }
    }
    rec.note("all 9 ratios are exact powers of two; measured exponent = m - 2k");
    if (count > 0)
      rec.warn("measured exponent differs from the quoted m - k in " + std::to_string(count) + " of 9 cases " +
               mismatches.str());
  });
}

inline CriterionResult wu_series() {
  return run(3, "Wu-series identity", "unit coefficients of the total power on u_-3 p1", [](Recorder& rec) {
    for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
      const PrimeField f(p);
      const int r = static_cast<int>(p - 1) / 2;
      const int order = 40;
      PowerSeries<PrimeField> num(order, f), den(order, f), closed(order, f);
      num.set(1, f.one());
      if (static_cast<int>(p) <= order) num.set(static_cast<int>(p), f.one());
      den.set(0, f.one());
      den.set(r, den[r] + f.one());
      const auto lhs = multiply(num, invert(den));
      for (int l = 0; r * l + 1 <= order; ++l) {
        const Fp sign = f.from_int(l % 2 ? -1 : 1);
        closed.set(r * l + 1, closed[r * l + 1] + sign);
        if (r * l + static_cast<int>(p) <= order)
          closed.set(r * l + static_cast<int>(p), closed[r * l + static_cast<int>(p)] + sign);
      }
      rec.check(lhs == closed, "series identity to order 40 at p = " + std::to_string(p));
      for (int i = 0; i <= 20; ++i)
        rec.check(!wu_coefficient(p, i).is_zero(), "unit coefficient p=" + std::to_string(p) + " i=" + std::to_string(i));
    }
    rec.note("identity holds to order 40 and every coefficient i <= 20 is a unit, p in {3,5,7,11,13}");
  });
}

inline CriterionResult splitting_obstruction_check() {
  return run(4, "Splitting obstruction on u_-4", "Q = P^3 - P^2 P^1 over F_3", [](Recorder& rec) {
    const auto verbatim = load_table("paper-verbatim-p3");
    const auto r = splitting_obstruction(verbatim);
    rec.check(r.q_u.to_string() == "u_-4*p1*p2", "Q(u_-4) = u_-4*p1*p2, got " + r.q_u.to_string());
    rec.check(r.restriction.is_zero(), "restriction vanishes");
    rec.check(!r.splits, "splitting verdict is false");
    rec.note("Q(u_-4) = " + r.q_u.to_string() + "; restriction = " + r.restriction.to_string() +
             "; splits: " + (r.splits ? "true" : "false"));
    // the oracle table is reported beside, not judged
    const auto oracle = derive_table_splitting(4, 3, 12);
    const auto cmp = compare_tables(verbatim, oracle);
    std::string entries;
    for (const auto& d : cmp.discrepancies) entries += (entries.empty() ? "" : ", ") + d.entry + (d.negated ? " (negated)" : "");
    if (!cmp.discrepancies.empty()) {
      const auto o = splitting_obstruction(oracle);
      rec.warn("splitting-principle table differs from the printed one at " + entries + "; with it Q(u_-4) = " +
               o.q_u.to_string() + ", restriction = " + o.restriction.to_string());
    }
  });
}

inline CriterionResult bernoulli_primes() {
  return run(5, "Bernoulli prime gate", "kappa coefficient is a unit at the listed primes", [](Recorder& rec) {
    int pairs = 0;
    for (int k = 1; k <= 10; ++k) {
      for (auto p : vanishing_primes(k, 100)) {
        ++pairs;
        rec.check(kappa_coefficient_unit(k, p).unit_mod_p, "unit at k=" + std::to_string(k) + ", p=" + std::to_string(p));
      }
    }
    const auto k1 = kappa_coefficient_unit(1, 3);
    rec.check(k1.value == 1, "k = 1 coefficient has magnitude 1");
    rec.check(adams_m(2) == 12, "m(2) = 12");
    rec.check(adams_m(4) == 720, "m(4) = 720");
    rec.check(adams_m(8) == BigInt(256) * 81 * 25 * 7, "m(8) = 2^8 3^4 5^2 7");
    rec.note(std::to_string(pairs) + " (k, p) pairs checked; m(2) = 12, m(4) = 720, m(8) = " + to_string(adams_m(8)));
  });
}

inline CriterionResult sphere_bundle_vanishing() {
  return run(6, "L-class vanishing on a sphere bundle", "fibre integral of L and the signature", [](Recorder& rec) {
    const auto model = load_model("sphere-s3");
    rec.check(model.fibre_dimension == 3, "fibre dimension 3");
    const int top = 4 * 8;
    const auto l = l_class_over_bso(3, top);
    for (int d = 4; d <= top; d += 4)
      rec.check(mmm_class(model, l.component(d)).is_zero(), "kappa of L in degree " + std::to_string(d));
    const Rational sig = signature_via_L(model);
    rec.check(sig == 0, "signature 0, got " + to_string(sig));
    rec.note("kappa_{L_4k} = 0 for 4k <= " + std::to_string(top) + "; signature = " + to_string(sig));
  });
}

inline CriterionResult pi0_table() {
  return run(7, "pi_0(MTSO(n)) table", "extension of bordism by Euler numbers", [](Recorder& rec) {
    const auto bordism = load_bordism();
    const std::vector<std::pair<int, std::string>> want = {{1, "Z/2"}, {2, "Z"}, {3, "0"}, {4, "Z⊕Z"}};
    for (const auto& [n, g] : want) {
      const auto r = pi0_report(n, bordism);
      rec.check(r.group == g, "pi_0(MTSO(" + std::to_string(n) + ")) = " + g + ", got " + r.group);
      rec.note("n=" + std::to_string(n) + ": " + r.group + ", splitting " + to_string(r.splitting));
    }
    rec.check(pi0_report(2, bordism).splitting == SplittingKind::half_euler, "n=2 split by chi/2");
    rec.check(pi0_report(4, bordism).splitting == SplittingKind::half_signature_plus_euler, "n=4 split by (sign+chi)/2");
    rec.check(kervaire_semicharacteristic(find_manifold("S1")) == 1, "kerv(S1) = 1");
    rec.check(kervaire_semicharacteristic(find_manifold("T5")) == 0, "kerv(T5) = 0");
  });
}

inline CriterionResult property_suites() {
  return run(8, "Property suites", "Cartan, Whitney, projection formula, Von Staudt-Clausen, validators",
             [](Recorder& rec) {
    // Cartan, 300 random pairs
    {
      std::mt19937_64 rng(8001);
      const auto t = load_table("paper-verbatim-p3");
      int bad = 0;
      for (int i = 0; i < 300; ++i) {
        const FpPoly x = prop::random_poly(rng, t.generators(), t.field(), 3, 2);
        const FpPoly y = prop::random_poly(rng, t.generators(), t.field(), 3, 2);
        auto sum = [&](const FpPoly& z) {
          FpPoly s = z.zero();
          for (const auto& c : total_power(z, t).components) s += c;
          return s;
        };
        if (!(sum(FpPoly::multiply(x, y, t.truncation())) == FpPoly::multiply(sum(x), sum(y), t.truncation()))) ++bad;
      }
      rec.check(bad == 0, "Cartan formula on 300 pairs");
      rec.note("Cartan: 300 pairs, " + std::to_string(bad) + " failures");
    }
    // Whitney: L(E + F) = L(E) L(F) through degree 16, rank 4 + 4
    {
      const int D = 16;
      std::vector<Generator> g;
      for (int i = 1; i <= 2; ++i) g.push_back({"a" + std::to_string(i), 4 * i});
      for (int i = 1; i <= 2; ++i) g.push_back({"b" + std::to_string(i), 4 * i});
      const RingPresentation target(make_generators(g), {}, D);
      const auto& tg = target.generators();
      auto cls = [&](char c, int i) {
        if (i == 0) return QPoly::constant(tg, 1);
        if (i > 2) return QPoly(tg);
        return QPoly::generator(tg, std::string(1, c) + std::to_string(i));
      };
      Assignment<RationalField> sum, left, right;
      for (int k = 1; k <= 4; ++k) {
        QPoly img(tg);
        for (int i = 0; i <= k; ++i) img += cls('a', i) * cls('b', k - i);
        sum.emplace("p" + std::to_string(k), img);
      }
      for (int k = 1; k <= 2; ++k) {
        left.emplace("p" + std::to_string(k), cls('a', k));
        right.emplace("p" + std::to_string(k), cls('b', k));
      }
      const auto q = genus_series(GenusKind::L, 4);
      const auto l4 = multiplicative_sequence(q, 4, D), l2 = multiplicative_sequence(q, 2, D);
      const QPoly lhs = poly_substitute(l4.total(), sum, target);
      const QPoly rhs = reduced_product(poly_substitute(l2.total(), left, target),
                                        poly_substitute(l2.total(), right, target), target);
      rec.check(lhs == rhs, "Whitney multiplicativity of L through degree 16");
      rec.note("Whitney: L(E+F) = L(E)L(F) through degree 16");
    }
    // projection formula, 500 random elements per model
    {
      std::mt19937_64 rng(8003);
      int bad = 0, models = 0;
      for (const char* name : {"trivial-s3", "sphere-s3", "sphere-s4", "cp1-bundle"}) {
        const auto m = load_model(name);
        ++models;
        for (int i = 0; i < 500; ++i) {
          const QPoly x = poly_reduce(prop::random_poly(rng, m.total.generators(), {}, 4, 2), m.total);
          const QPoly b = poly_reduce(prop::random_poly(rng, m.base.ring.generators(), {}, 3, 2), m.base.ring);
          if (!(fiber_integrate(m, reduced_product(m.pullback(b), x, m.total)) ==
                reduced_product(b, fiber_integrate(m, x), m.base.ring)))
            ++bad;
        }
      }
      rec.check(bad == 0, "projection formula");
      rec.note("projection formula: " + std::to_string(models) + " models x 500 elements, " + std::to_string(bad) +
               " failures");
    }
    // Von Staudt-Clausen
    {
      bool ok = true;
      for (int k = 1; k <= 20; ++k) {
        Rational s = bernoulli(2 * k);
        for (auto p : primes_up_to(2 * k + 1))
          if ((2 * k) % (p - 1) == 0) s += Rational(1, p);
        ok = ok && denominator_of(s) == 1;
      }
      rec.check(ok, "B_2k + sum 1/p is an integer for k <= 20");
      rec.note("Von Staudt-Clausen holds for k <= 20");
    }
    // descriptor validators on single-entry mutations
    {
      int total = 0, missed = 0;
      for (const auto& m : load_manifolds()) {
        std::vector<ManifoldDescriptor> mutants;
        for (int i = 0; i <= m.dim; ++i) {
          auto a = m;
          a.betti[i] += 1;
          mutants.push_back(a);
        }
        for (int d : {-1, 1}) {
          auto s = m;
          s.signature += d;
          mutants.push_back(s);
        }
        for (const auto& x : mutants) {
          ++total;
          try {
            validate(x);
            ++missed;
          } catch (const InvalidDescriptor&) {
          }
        }
      }
      rec.check(missed == 0, "validators reject every mutant");
      rec.note("validators: " + std::to_string(total) + " mutants, " + std::to_string(missed) + " accepted");
    }
  });
}

inline std::vector<CriterionResult> criteria_one_to_eight() {
  return {l_class_table(),         scaling_relation(),   wu_series(),
          splitting_obstruction_check(), bernoulli_primes(), sphere_bundle_vanishing(),
          pi0_table(),             property_suites()};
}

}  // namespace acceptance

// Criteria 1-8, then 9: a second in-process run must render identically.
inline AcceptanceReport run_acceptance() {
  AcceptanceReport report{acceptance::criteria_one_to_eight()};
  const AcceptanceReport again{acceptance::criteria_one_to_eight()};
  report.rows.push_back(acceptance::run(9, "Determinism", "repeated run renders byte-identically",
                                        [&](acceptance::Recorder& rec) {
    rec.check(report.render() == again.render(), "second run differs");
    rec.check(report.ok(), "criteria 1-8 free of failures");
    rec.note("two in-process runs of criteria 1-8 render identically");
  }));
  return report;
}

}  // namespace charclass
