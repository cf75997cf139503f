#pragma once

// Mod-p reduced powers P^i on polynomial rings and on Thom modules.
//
// Generator actions come from a table (configuration data, not derived),
// and products are expanded with the Cartan formula
// P(xy) = P(x)P(y). On a Thom element P(u * c) = u * K * P(c) where
// K = sum_i K_i is the table's Wu data, P^i(u) = u * K_i. P^i raises
// degree by 2i(p-1).

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "charclass/symmetric.hpp"
#include "charclass/thom.hpp"

namespace charclass {

class SteenrodTable {
 public:
  SteenrodTable(std::string name, std::uint32_t prime, Generators gens, int truncation)
      : name_(std::move(name)), field_(prime), gens_(std::move(gens)), truncation_(truncation) {}

  const std::string& name() const { return name_; }
  std::uint32_t prime() const { return field_.prime; }
  const PrimeField& field() const { return field_; }
  const Generators& generators() const { return gens_; }
  int truncation() const { return truncation_; }
  int step() const { return 2 * static_cast<int>(prime() - 1); }  // degree of P^1

  bool has_thom() const { return thom_shift_.has_value(); }
  int thom_shift() const {
    if (!thom_shift_) throw ConfigurationError("table " + name_ + " has no Thom block");
    return *thom_shift_;
  }

  void set_action(const std::string& gen, int i, FpPoly value) {
    const auto idx = gens_->find(gen);
    if (!idx) throw ConfigurationError("table " + name_ + ": unknown generator " + gen);
    if (i < 0) throw ConfigurationError("negative power index");
    value = embed(value, gens_);
    const int want = (*gens_)[*idx].degree + i * step();
    for (int d : value.degrees())
      if (d != want)
        throw DegreeMismatch("P" + std::to_string(i) + " " + gen + " must have degree " + std::to_string(want));
    actions_[gen][i] = std::move(value);
  }

  void set_thom(int shift, std::map<int, FpPoly> wu) {
    for (auto& [i, k] : wu) {
      k = embed(k, gens_);
      for (int d : k.degrees())
        if (d != i * step()) throw DegreeMismatch("Wu term " + std::to_string(i) + " has the wrong degree");
    }
    thom_shift_ = shift;
    wu_ = std::move(wu);
  }

  // P^i(g), using the unstable axioms where the table is silent:
  // P^0 g = g, P^i g = 0 for 2i > deg g, P^{deg g / 2} g = g^p. Values
  // above the truncation are never needed and read as zero.
  FpPoly action(const std::string& gen, int i) const {
    const auto idx = gens_->find(gen);
    if (!idx) throw ConfigurationError("table " + name_ + " has no generator " + gen);
    const int deg = (*gens_)[*idx].degree;
    if (i == 0) return FpPoly::generator(gens_, gen, field_);
    if (2 * i > deg || deg + i * step() > truncation_) return FpPoly(gens_, field_);
    if (auto it = actions_.find(gen); it != actions_.end())
      if (auto jt = it->second.find(i); jt != it->second.end()) return jt->second;
    if (2 * i == deg) return FpPoly::generator(gens_, gen, field_).pow(prime());
    throw ConfigurationError("table " + name_ + " has no value for P" + std::to_string(i) + " " + gen);
  }

  FpPoly wu_term(int i) const {
    thom_shift();
    if (i == 0) return FpPoly::constant(gens_, 1, field_);
    if (i * step() > truncation_) return FpPoly(gens_, field_);
    auto it = wu_.find(i);
    if (it == wu_.end()) throw ConfigurationError("table " + name_ + " has no Wu term K" + std::to_string(i));
    return it->second;
  }

  FpPoly wu_total() const {
    FpPoly k(gens_, field_);
    for (int i = 0; i * step() <= truncation_; ++i) k += wu_term(i);
    return k;
  }

  // Checks the unstable axioms against every explicit entry.
  void validate() const {
    for (const auto& [gen, by_i] : actions_) {
      const int deg = (*gens_)[gens_->index_of(gen)].degree;
      for (const auto& [i, v] : by_i) {
        if (i == 0 && !(v == FpPoly::generator(gens_, gen, field_)))
          throw ConfigurationError("P0 " + gen + " must be " + gen);
        if (2 * i > deg && !v.is_zero()) throw ConfigurationError("P" + std::to_string(i) + " " + gen + " must vanish");
        if (2 * i == deg && !(v == FpPoly::generator(gens_, gen, field_).pow(prime())))
          throw ConfigurationError("P" + std::to_string(i) + " " + gen + " must be the p-th power");
      }
    }
  }

  // Total power of a generator, truncated.
  FpPoly total_action(const std::string& gen) const {
    FpPoly out(gens_, field_);
    const int deg = (*gens_)[gens_->index_of(gen)].degree;
    for (int i = 0; 2 * i <= deg; ++i) out += action(gen, i);
    return out;
  }

  const std::map<std::string, std::map<int, FpPoly>>& actions() const { return actions_; }
  const std::map<int, FpPoly>& wu() const { return wu_; }

 private:
  std::string name_;
  PrimeField field_;
  Generators gens_;
  int truncation_;
  std::map<std::string, std::map<int, FpPoly>> actions_;
  std::optional<int> thom_shift_;
  std::map<int, FpPoly> wu_;
};

template <class Element>
struct TotalPowerResult {
  Element input;
  std::vector<Element> components;  // components[i] = P^i(input)

  Element component(std::size_t i) const {
    if (i < components.size()) return components[i];
    Element z = input;
    if constexpr (std::is_same_v<Element, FpPoly>)
      z = input.zero();
    else
      z.payload = input.payload.zero();
    return z;
  }
};

namespace detail {

inline FpPoly check_over_table(const FpPoly& x, const SteenrodTable& t) {
  if (x.field().prime != t.prime()) throw PresentationMismatch("element is over F" + std::to_string(x.field().prime) +
                                                               ", table over F" + std::to_string(t.prime()));
  return embed(x, t.generators());
}

// Components of P(x) (times the Wu factor on a Thom element). A piece of x
// in degree d lands in component i at degree d + i * step.
inline std::vector<FpPoly> total_power_components(const FpPoly& x, const SteenrodTable& t,
                                                  const std::optional<FpPoly>& thom_factor) {
  std::map<std::string, FpPoly> per_gen;
  const auto& gens = *t.generators();
  std::vector<FpPoly> comps;
  for (int d : x.degrees()) {
    const FpPoly piece = x.component(d);
    FpPoly total(t.generators(), t.field());
    for (const auto& [e, c] : piece.terms()) {
      FpPoly term = FpPoly::constant(t.generators(), c, t.field());
      if (thom_factor) term = FpPoly::multiply(term, *thom_factor, t.truncation());
      for (std::size_t g = 0; g < e.size(); ++g) {
        if (!e[g]) continue;
        auto it = per_gen.find(gens[g].name);
        if (it == per_gen.end()) it = per_gen.emplace(gens[g].name, t.total_action(gens[g].name)).first;
        term = FpPoly::multiply(term, it->second.pow(e[g], t.truncation()), t.truncation());
      }
      total += term;
    }
    for (int td : total.degrees()) {
      const int shift = td - d;
      if (shift % t.step() != 0 || shift < 0) throw InternalInconsistency("total power left the degree lattice");
      const auto i = static_cast<std::size_t>(shift / t.step());
      while (comps.size() <= i) comps.push_back(FpPoly(t.generators(), t.field()));
      comps[i] += total.component(td);
    }
  }
  if (comps.empty()) comps.push_back(FpPoly(t.generators(), t.field()));
  return comps;
}

}  // namespace detail

inline TotalPowerResult<FpPoly> total_power(const FpPoly& x, const SteenrodTable& t) {
  const FpPoly xx = detail::check_over_table(x, t);
  return {xx, detail::total_power_components(xx, t, std::nullopt)};
}

inline TotalPowerResult<ThomElement<PrimeField>> total_power(const ThomElement<PrimeField>& x, const SteenrodTable& t) {
  if (x.shift != t.thom_shift())
    throw PresentationMismatch("table " + t.name() + " acts on u_" + std::to_string(t.thom_shift()) + ", not " +
                               x.thom_name());
  const FpPoly payload = detail::check_over_table(x.payload, t);
  TotalPowerResult<ThomElement<PrimeField>> r{{x.shift, payload, x.suspensions}, {}};
  for (auto& c : detail::total_power_components(payload, t, t.wu_total()))
    r.components.push_back({x.shift, std::move(c), x.suspensions});
  return r;
}

template <class Element>
Element power(int i, const Element& x, const SteenrodTable& t) {
  if (i < 0) throw InvalidArgument("negative power index");
  return total_power(x, t).component(static_cast<std::size_t>(i));
}

// ops applied right to left: {2, 1} is P^2 P^1.
template <class Element>
Element compose_powers(const std::vector<int>& ops, Element x, const SteenrodTable& t) {
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) x = power(*it, x, t);
  return x;
}

// Coefficient of z^{ri+1} in (z + z^p)(1 + z^r)^{-1} over F_p, r = (p-1)/2.
inline Fp wu_coefficient(std::uint32_t p, int i) {
  require_odd_prime(p);
  if (i < 0) throw InvalidArgument("wu_coefficient needs i >= 0");
  const PrimeField f(p);
  const int r = static_cast<int>(p - 1) / 2;
  const int order = r * i + 1;
  PowerSeries<PrimeField> num(order, f), den(order, f);
  num.set(1, f.one());
  if (static_cast<int>(p) <= order) num.set(static_cast<int>(p), f.one());
  den.set(0, f.one());
  if (r <= order) den.set(r, den[r] + f.one());
  const Fp c = multiply(num, invert(den))[order];
  if (c.is_zero()) throw InternalInconsistency("Wu coefficient vanished");
  return c;
}

// Total P(u_{-3} p1^k) over BSO(3) at p:
//   u_{-3} (x + x^p)(1 + x^r)^{-1} P(p1)^{k-1},  x = p1,
// with P(p1) = x(1 + x^r)^2 from the splitting principle for k >= 2.
// Components i = 0..max_i.
inline TotalPowerResult<ThomElement<PrimeField>> wu_thom_power_bso3(int k, std::uint32_t p, int max_i = -1) {
  require_odd_prime(p);
  if (k < 1) throw InvalidArgument("exponent of p1 must be positive");
  if (max_i < 0) max_i = 2 * k + 2;
  const PrimeField f(p);
  const int r = static_cast<int>(p - 1) / 2;
  const int order = r * max_i + k;  // highest power of x needed
  auto series = [&](std::initializer_list<std::pair<int, int>> terms) {
    PowerSeries<PrimeField> s(order, f);
    for (auto [e, c] : terms)
      if (e <= order) s.set(e, s[e] + f.from_int(c));
    return s;
  };
  PowerSeries<PrimeField> total =
      multiply(series({{1, 1}, {static_cast<int>(p), 1}}), invert(series({{0, 1}, {r, 1}})));
  const auto pp1 = multiply(series({{1, 1}}), multiply(series({{0, 1}, {r, 1}}), series({{0, 1}, {r, 1}})));
  for (int j = 1; j < k; ++j) total = multiply(total, pp1);

  const Generators g = RingPresentation::bso(3).generators();
  auto thom = [&](int e, const Fp& c) {
    return ThomElement<PrimeField>{-3, FpPoly::monomial(g, Exponents{e}, c, f), 0};
  };
  TotalPowerResult<ThomElement<PrimeField>> res{thom(k, f.one()), {}};
  for (int i = 0; i <= max_i; ++i) res.components.push_back(thom(r * i + k, total[r * i + k]));
  return res;
}

struct SplittingObstruction {
  ThomElement<PrimeField> q_u;          // (P^3 - P^2 P^1)(u)
  ThomElement<PrimeField> p2p1_u;       // intermediate P^2 P^1 (u)
  ThomElement<PrimeField> restriction;  // eta^* of q_u
  bool splits = true;
};

// Q = P^3 - P^2 P^1 on the table's Thom class and its eta-restriction.
// A nonzero Q(u) whose restriction vanishes is the obstruction; `splits`
// is false exactly when that happens.
inline SplittingObstruction splitting_obstruction(const SteenrodTable& t) {
  const int shift = t.thom_shift();
  const ThomElement<PrimeField> u{shift, FpPoly::constant(t.generators(), 1, t.field()), 0};
  SplittingObstruction r;
  r.p2p1_u = compose_powers({2, 1}, u, t);
  const auto p3 = power(3, u, t);
  r.q_u = {shift, p3.payload - r.p2p1_u.payload, 0};
  r.restriction = eta_restrict(r.q_u, std::max(t.truncation(), 0));
  r.splits = !(!r.q_u.is_zero() && r.restriction.is_zero());
  return r;
}

// Oracle table from the splitting principle. A rank-n bundle has m = n/2
// Pontrjagin roots t_j = x_j^2 of degree 4; P(x) = x + x^p forces
// P(t) = t (1 + t^r)^2. P(p_i) = e_i(P(t_1), ..., P(t_m)). The Thom class of
// the negative universal bundle carries K = prod_j (1 + t_j^r)^{-1}.
inline SteenrodTable derive_table_splitting(int rank, std::uint32_t p, int max_degree) {
  require_odd_prime(p);
  if (rank < 2 || rank > 8) throw InvalidArgument("derive_table_splitting supports 2 <= rank <= 8");
  const PrimeField f(p);
  const int m = rank / 2;
  const int r = static_cast<int>(p - 1) / 2;
  std::vector<Generator> root_gens;
  for (int j = 1; j <= m; ++j) root_gens.push_back({"t" + std::to_string(j), 4});
  const Generators roots = make_generators(root_gens);
  const Generators pont = pontrjagin_generators(m);

  auto root = [&](int j, int e) {
    Exponents x(m, 0);
    x[j] = e;
    return FpPoly::monomial(roots, x, f.one(), f);
  };
  std::vector<FpPoly> image;  // P(t_j)
  std::vector<FpPoly> wu_factor;
  for (int j = 0; j < m; ++j) {
    const FpPoly one_plus = FpPoly::constant(roots, 1, f) + root(j, r);
    image.push_back(FpPoly::multiply(root(j, 1), one_plus.pow(2), max_degree));
    FpPoly inv(roots, f);
    for (int l = 0; 4 * r * l <= max_degree; ++l) {
      Exponents x(m, 0);
      x[j] = r * l;
      inv.add_term(std::move(x), f.from_int(l % 2 ? -1 : 1));
    }
    wu_factor.push_back(inv);
  }
  // e_i of the images by the usual recursion
  std::vector<FpPoly> e(m + 1, FpPoly(roots, f));
  e[0] = FpPoly::constant(roots, 1, f);
  for (int j = 0; j < m; ++j)
    for (int i = std::min(j + 1, m); i >= 1; --i) e[i] += FpPoly::multiply(image[j], e[i - 1], max_degree);

  SteenrodTable t("splitting-rank" + std::to_string(rank) + "-p" + std::to_string(p), p, pont, max_degree);
  const int step = 2 * static_cast<int>(p - 1);
  for (int i = 1; i <= m; ++i) {
    const FpPoly total = symmetric_to_elementary(e[i], pont);
    for (int a = 1; 2 * a <= 4 * i && 4 * i + a * step <= max_degree; ++a)
      t.set_action("p" + std::to_string(i), a, total.component(4 * i + a * step));
  }
  FpPoly k = FpPoly::constant(roots, 1, f);
  for (const auto& w : wu_factor) k = FpPoly::multiply(k, w, max_degree);
  const FpPoly kk = symmetric_to_elementary(k, pont);
  std::map<int, FpPoly> wu;
  for (int a = 1; a * step <= max_degree; ++a) wu.emplace(a, kk.component(a * step));
  t.set_thom(-rank, std::move(wu));
  return t;
}

struct TableDiscrepancy {
  std::string entry;  // "P1 p1", "K2"
  FpPoly left, right;
  bool negated = false;  // right == -left
};

struct TableComparison {
  std::vector<TableDiscrepancy> discrepancies;
  // every differing P^i entry satisfies right = (-1)^i left
  bool odd_power_sign_flip = false;
};

// Entry-by-entry comparison over the left table's explicit entries.
inline TableComparison compare_tables(const SteenrodTable& a, const SteenrodTable& b) {
  if (a.prime() != b.prime()) throw InvalidArgument("tables over different primes");
  TableComparison out;
  bool any_action = false, all_flip = true;
  for (const auto& [gen, by_i] : a.actions()) {
    for (const auto& [i, va] : by_i) {
      const FpPoly vb = embed(b.action(gen, i), a.generators());
      if (va == vb) {
        if (i % 2 == 1 && !va.is_zero()) all_flip = false;
        continue;
      }
      any_action = true;
      const bool neg = va == -vb;
      if (!(i % 2 == 1 && neg)) all_flip = false;
      out.discrepancies.push_back({"P" + std::to_string(i) + " " + gen, va, vb, neg});
    }
  }
  if (a.has_thom() && b.has_thom()) {
    for (const auto& [i, ka] : a.wu()) {
      const FpPoly kb = embed(b.wu_term(i), a.generators());
      if (!(ka == kb)) out.discrepancies.push_back({"K" + std::to_string(i), ka, kb, ka == -kb});
    }
  }
  out.odd_power_sign_flip = any_action && all_flip;
  return out;
}

// The table with P^i replaced by (-1)^i P^i on generators and Wu data.
inline SteenrodTable sign_flipped(const SteenrodTable& t) {
  SteenrodTable out(t.name() + "-signflip", t.prime(), t.generators(), t.truncation());
  for (const auto& [gen, by_i] : t.actions())
    for (const auto& [i, v] : by_i) out.set_action(gen, i, i % 2 ? -v : v);
  if (t.has_thom()) {
    std::map<int, FpPoly> wu;
    for (const auto& [i, k] : t.wu()) wu.emplace(i, i % 2 ? -k : k);
    out.set_thom(t.thom_shift(), std::move(wu));
  }
  return out;
}

// Table fixtures, one entry per line:
//   table NAME
//   prime 3
//   truncation 12
//   generator p1 4
//   P1 p1 = p1^2 + p2
//   thom -4
//   P1 u = -p1            (P^1 u = u * (-p1))
inline SteenrodTable parse_steenrod_table(const std::string& text) {
  std::string name = "table";
  std::optional<std::uint32_t> prime;
  int truncation = kDefaultTruncation;
  std::vector<Generator> gens;
  std::vector<std::tuple<int, std::string, std::string, int>> entries;  // i, target, rhs, line
  std::optional<int> thom;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(line) + ": " + msg); };
  auto to_int = [&](const std::string& v) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(v, &used);
      if (used != v.size()) fail("expected an integer, got '" + v + "'");
      return x;
    } catch (const std::logic_error&) {
      fail("expected an integer, got '" + v + "'");
    }
    return 0;
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    std::istringstream ls(hash == std::string::npos ? raw : raw.substr(0, hash));
    std::string key;
    if (!(ls >> key)) continue;
    std::string rest;
    std::getline(ls, rest);
    rest = detail::trim(rest);
    if (key == "table") name = rest;
    else if (key == "prime") {
      const int p = to_int(rest);
      if (p <= 0) fail("prime must be positive");
      prime = static_cast<std::uint32_t>(p);
    } else if (key == "truncation") truncation = to_int(rest);
    else if (key == "generator") {
      std::istringstream gs(rest);
      std::string g, d;
      if (!(gs >> g >> d)) fail("expected 'generator NAME DEGREE'");
      gens.push_back({g, to_int(d)});
    } else if (key == "thom") thom = to_int(rest);
    else if (key.size() > 1 && key[0] == 'P') {
      const int i = to_int(key.substr(1));
      const auto [lhs, rhs] = detail::split_equation(rest, line);
      entries.emplace_back(i, lhs, rhs, line);
    } else fail("unknown key '" + key + "'");
  }
  if (!prime) throw ParseError("table " + name + ": missing prime");
  if (gens.empty()) throw ParseError("table " + name + ": no generators");
  SteenrodTable t(name, *prime, make_generators(gens), truncation);
  std::map<int, FpPoly> wu;
  for (const auto& [i, target, rhs, l] : entries) {
    line = l;
    const FpPoly value = parse_poly(rhs, t.generators(), t.field());
    if (target == "u") {
      if (!thom) fail("Wu entry before 'thom'");
      wu.emplace(i, value);
    } else {
      t.set_action(target, i, value);
    }
  }
  if (thom) t.set_thom(*thom, std::move(wu));
  t.validate();
  return t;
}

// Built-in tables. paper-verbatim-p3 carries the generator formulas and the
// Wu lowest terms K = 1 - p1 + p1^2 - p1^3 - p1 p2 exactly as printed; the
// oracle table is what derive_table_splitting(4, 3, 12) produces.
inline const char* kPaperVerbatimP3 = R"(table paper-verbatim-p3
prime 3
truncation 12
generator p1 4
generator p2 8
P1 p1 = p1^2 + p2
P2 p1 = p1^3
P1 p2 = p1*p2
thom -4
P1 u = -p1
P2 u = p1^2
P3 u = -p1^3 - p1*p2
)";

inline const char* kOracleP3 = R"(table oracle-p3
prime 3
truncation 12
generator p1 4
generator p2 8
P1 p1 = -p1^2 - p2
P2 p1 = p1^3
P1 p2 = -p1*p2
thom -4
P1 u = -p1
P2 u = p1^2 - p2
P3 u = -p1^3 + 2*p1*p2
)";

inline SteenrodTable builtin_table(const std::string& name) {
  if (name == "paper-verbatim-p3") return parse_steenrod_table(kPaperVerbatimP3);
  if (name == "oracle-p3") return parse_steenrod_table(kOracleP3);
  throw FixtureNotFound("no built-in Steenrod table named " + name);
}

}  // namespace charclass
