#pragma once

// Thom-module cohomology of MTSO(n) and finite Leray-Hirsch models of
// manifold bundles E -> B with fibre integration.
//
// H*(MTSO(n)) is the free rank-one H*(BSO(n))-module on u_{-n} (degree -n);
// an element u_{-n} * c is stored as (shift, payload). A bundle model is a
// presentation of H*(E) as a free H*(B)-module on monomials in fibre
// generators; fibre integration reads off the coefficient of the top one.

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "charclass/genus.hpp"
#include "charclass/presentation.hpp"

namespace charclass {

template <class Field = RationalField>
struct ThomElement {
  int shift = 0;  // u_{shift}; -n for MTSO(n)
  GradedPoly<Field> payload;
  int suspensions = 0;  // desuspensions applied by eta_restrict

  bool is_zero() const { return payload.is_zero(); }

  // Total degree; the payload must be homogeneous and nonzero.
  int degree() const {
    if (payload.is_zero() || !payload.is_homogeneous())
      throw InvalidArgument("degree of a zero or inhomogeneous Thom element");
    return shift + payload.max_degree();
  }

  std::string thom_name() const { return "u_" + std::to_string(shift); }

  // "u_-4*p1*p2", "-u_-3*p1^2", "2*u_-3*p1^2", "u_-4*(p1 - p2)", "0".
  std::string to_string() const {
    if (payload.is_zero()) return "0";
    if (payload.size() == 1) {
      const std::string body = payload.to_compact_string();
      const bool negative = body.front() == '-';
      const std::string mag = negative ? body.substr(1) : body;
      std::string out = negative ? "-" : "";
      if (mag == "1") return out + thom_name();
      // leading scalar stays in front: "2*p1^2" -> "2*u_-3*p1^2"
      const auto star = mag.find('*');
      const bool scalar_only = mag.find_first_not_of("0123456789/") == std::string::npos;
      if (scalar_only) return out + mag + "*" + thom_name();
      if (star != std::string::npos && mag.find_first_not_of("0123456789/") == star)
        return out + mag.substr(0, star) + "*" + thom_name() + mag.substr(star);
      return out + thom_name() + "*" + mag;
    }
    return thom_name() + "*(" + payload.to_compact_string() + ")";
  }

  friend bool operator==(const ThomElement& a, const ThomElement& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.shift == b.shift && a.payload == b.payload;
  }
};

// u_{-n} * c with c put in BSO(n) normal form.
template <class Field>
ThomElement<Field> thom_promote(const GradedPoly<Field>& c, int n, int truncation = kDefaultTruncation) {
  const auto bso = RingPresentation::bso(n, truncation);
  return {-n, poly_reduce(c, bso), 0};
}

// Ring map H*(BSO(n+1)) -> H*(BSO(n)) induced by L_{n+1}|BSO(n) = L_n + R,
// applied by generator name to a polynomial over any subset of the
// BSO(n+1) generators. chi and, for n+1 even, the top Pontrjagin class die.
template <class Field>
GradedPoly<Field> restrict_to_bso(const GradedPoly<Field>& c, int n, int truncation = kDefaultTruncation) {
  const auto target = RingPresentation::bso(n, truncation);
  const auto source = RingPresentation::bso(n + 1, truncation);
  Assignment<Field> images;
  for (const auto& g : *c.generators()) {
    const auto in_source = source.generators()->find(g.name);
    if (!in_source || (*source.generators())[*in_source].degree != g.degree)
      throw PresentationMismatch("generator " + g.name + " is not a class of BSO(" + std::to_string(n + 1) + ")");
    if (!target.generators()->find(g.name)) images.emplace(g.name, GradedPoly<Field>(target.generators(), c.field()));
  }
  return poly_substitute(c, images, target);
}

// eta^*: H*(MTSO(n+1)) -> H*(Sigma^{-1} MTSO(n)), u_{-(n+1)} c -> u_{-n} res(c),
// recording one desuspension.
template <class Field>
ThomElement<Field> eta_restrict(const ThomElement<Field>& e, int truncation = kDefaultTruncation) {
  const int rank = -e.shift;
  if (rank < 1) throw InvalidArgument("eta_restrict needs a Thom class of positive rank");
  return {e.shift + 1, restrict_to_bso(e.payload, rank - 1, truncation), e.suspensions + 1};
}

template <class Field = RationalField>
struct ManifoldBasisReport {
  int n = 0;
  int degree = 0;
  std::string field;
  std::vector<ThomElement<Field>> basis;
};

// Monomial basis of H^degree(MTSO(n); F) = u_{-n} * H^{degree+n}(BSO(n); F).
template <class Field = RationalField>
ManifoldBasisReport<Field> mtso_basis(int n, int degree, const Field& field = {}) {
  if (field.characteristic() == 2) throw InvalidArgument("characteristic 2 is not supported");
  const int truncation = std::max(kDefaultTruncation, degree + n);
  const auto bso = RingPresentation::bso(n, truncation);
  ManifoldBasisReport<Field> r{n, degree, field.name(), {}};
  for (auto& e : bso.monomial_basis(degree + n))
    r.basis.push_back({-n, GradedPoly<Field>::monomial(bso.generators(), e, field.one(), field), 0});
  return r;
}

// ---------------------------------------------------------------------------
// Bundle models

struct BaseSpace {
  RingPresentation ring;
  int dimension = 0;
  std::optional<Exponents> fundamental;  // top monomial m
  Rational fundamental_value = 1;         // <m, [B]>
  Assignment<RationalField> tangent;      // p_i(TB); empty means stably framed
};

struct BundleModel {
  std::string name;
  BaseSpace base;
  RingPresentation total;  // base generators first, then fibre generators
  std::size_t num_base_generators = 0;
  std::vector<Exponents> fibre_basis;  // exponents over the fibre generators
  Exponents fibre_top;
  int fibre_dimension = 0;
  Assignment<RationalField> vertical;  // p_i(T_v E), chi(T_v E) over `total`

  QPoly pullback(const QPoly& b) const { return poly_reduce(embed(b, total.generators()), total); }

  // Leray-Hirsch coordinates: fibre-basis monomial -> coefficient in H*(B).
  std::map<Exponents, QPoly> coordinates(const QPoly& x) const {
    const QPoly r = poly_reduce(embed(x, total.generators()), total);
    std::map<Exponents, QPoly> out;
    for (const auto& fb : fibre_basis) out.emplace(fb, QPoly(base.ring.generators()));
    const std::size_t nb = num_base_generators;
    for (const auto& [e, c] : r.terms()) {
      Exponents be(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nb));
      Exponents fe(e.begin() + static_cast<std::ptrdiff_t>(nb), e.end());
      auto it = out.find(fe);
      if (it == out.end()) throw InternalInconsistency("normal form left the fibre basis");
      it->second.add_term(std::move(be), c);
    }
    for (auto& [fb, poly] : out) poly = poly_reduce(poly, base.ring);
    return out;
  }

  // Euler characteristic of the fibre, read off the Leray-Hirsch basis.
  int fibre_euler_characteristic() const {
    const auto& gens = *total.generators();
    int chi = 0;
    for (const auto& fb : fibre_basis) {
      int d = 0;
      for (std::size_t i = 0; i < fb.size(); ++i) d += fb[i] * gens[num_base_generators + i].degree;
      chi += d % 2 == 0 ? 1 : -1;
    }
    return chi;
  }
};

// Assembles and validates a model: every fibre generator is bounded by a
// rewrite rule (so the fibre basis is finite), there is a unique top basis
// element in degree fibre_dimension, and for even rank chi^2 = p_top holds.
inline BundleModel make_bundle_model(std::string name, BaseSpace base, std::vector<Generator> fibre_generators,
                                     const std::vector<std::pair<std::string, QPoly>>& fibre_relations,
                                     int fibre_dimension,
                                     const std::vector<std::pair<std::string, std::string>>& vertical_text) {
  if (fibre_dimension < 0) throw InvalidArgument("fibre dimension must be nonnegative");
  std::vector<Generator> all(base.ring.generators()->begin(), base.ring.generators()->end());
  const std::size_t nb = all.size();
  for (auto& g : fibre_generators) all.push_back(g);
  const Generators gens = make_generators(all);

  std::vector<RewriteRule> rules;
  for (const auto& r : base.ring.rules()) rules.push_back({r.generator, r.power, embed(r.replacement, gens)});
  std::vector<int> bound(fibre_generators.size(), 0);
  for (const auto& [lhs, rhs] : fibre_relations) {
    // lhs is "g^k"
    const QPoly l = parse_poly(lhs, gens);
    if (l.size() != 1) throw ParseError("relation left side must be a generator power: " + lhs);
    const auto& [e, c] = *l.terms().begin();
    std::size_t which = e.size();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) which = which == e.size() ? i : e.size() + 1;
    if (which >= e.size() || c != 1 || which < nb)
      throw ParseError("relation left side must be a fibre generator power: " + lhs);
    rules.push_back({which, e[which], embed(rhs, gens)});
    bound[which - nb] = e[which];
  }
  for (std::size_t i = 0; i < bound.size(); ++i)
    if (bound[i] == 0)
      throw ConfigurationError("fibre generator " + fibre_generators[i].name + " needs a relation");

  BundleModel m;
  m.name = std::move(name);
  m.num_base_generators = nb;
  m.fibre_dimension = fibre_dimension;
  m.total = RingPresentation(gens, std::move(rules), base.ring.truncation(), m.name);
  m.base = std::move(base);

  // fibre basis: exponents below each bound
  Exponents cur(fibre_generators.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == cur.size()) {
      m.fibre_basis.push_back(cur);
      return;
    }
    for (int k = 0; k < bound[i]; ++k) {
      cur[i] = k;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  auto fibre_degree = [&](const Exponents& fe) {
    int d = 0;
    for (std::size_t i = 0; i < fe.size(); ++i) d += fe[i] * fibre_generators[i].degree;
    return d;
  };
  int top = -1, tops = 0;
  for (const auto& fb : m.fibre_basis) {
    const int d = fibre_degree(fb);
    if (d > top) top = d, tops = 1, m.fibre_top = fb;
    else if (d == top) ++tops;
  }
  if (top != fibre_dimension || tops != 1)
    throw DegreeMismatch("fibre basis of " + m.name + " has no unique top class in degree " +
                         std::to_string(fibre_dimension));

  const auto bso = RingPresentation::bso(fibre_dimension, m.total.truncation());
  for (const auto& [cls, text] : vertical_text) {
    const auto idx = bso.generators()->find(cls);
    if (!idx) throw PresentationMismatch(cls + " is not a class of BSO(" + std::to_string(fibre_dimension) + ")");
    QPoly v = poly_reduce(parse_poly(text, gens), m.total);
    for (int d : v.degrees())
      if (d != (*bso.generators())[*idx].degree) throw DegreeMismatch("vertical " + cls + " has the wrong degree");
    if (!m.vertical.emplace(cls, std::move(v)).second) throw ParseError("vertical " + cls + " given twice");
  }
  for (const auto& g : *bso.generators())
    if (!m.vertical.count(g.name)) m.vertical.emplace(g.name, QPoly(gens));
  if (fibre_dimension % 2 == 0 && fibre_dimension >= 2) {
    const std::string top_p = "p" + std::to_string(fibre_dimension / 2);
    const QPoly& chi = m.vertical.at("chi");
    if (!(reduced_product(chi, chi, m.total) == m.vertical.at(top_p)))
      throw InternalInconsistency("vertical chi^2 differs from " + top_p + " in model " + m.name);
  }
  return m;
}

// Sphere bundle S(V) -> B of a rank-r bundle V with fibre basis {1, z},
// deg z = r - 1. T_v S(V) + R = f^*V, so p_i(T_v) = f^* p_i(V). For even r
// the Euler class must vanish (then z^2 = 0). For odd r, z = chi(T_v)/2 and
// z^2 = f^* p_{(r-1)/2}(V) / 4.
inline BundleModel sphere_bundle_model(int rank, const BaseSpace& base, const Assignment<RationalField>& pontrjagin,
                                       const QPoly& euler, std::string name = "sphere-bundle") {
  if (rank < 2) throw InvalidArgument("sphere bundles need rank >= 2");
  const int n = rank - 1;
  for (const auto& [cls, poly] : pontrjagin) {
    if (cls.size() < 2 || cls[0] != 'p') throw InvalidArgument("unknown Pontrjagin class " + cls);
    const int i = std::stoi(cls.substr(1));
    for (int d : poly.degrees())
      if (d != 4 * i) throw DegreeMismatch(cls + "(V) must have degree " + std::to_string(4 * i));
  }
  if (!euler.is_zero()) {
    for (int d : euler.degrees())
      if (d != rank) throw DegreeMismatch("Euler class must have degree " + std::to_string(rank));
    throw ConfigurationError("sphere bundles with nonzero Euler class are not free over the base");
  }
  auto text_of = [&](const std::string& cls) {
    auto it = pontrjagin.find(cls);
    return it == pontrjagin.end() ? std::string("0") : poly_reduce(it->second, base.ring).to_string();
  };
  std::vector<std::pair<std::string, std::string>> vertical;
  for (int i = 1; i <= n / 2; ++i) vertical.emplace_back("p" + std::to_string(i), text_of("p" + std::to_string(i)));
  std::vector<std::pair<std::string, QPoly>> relations;
  std::vector<Generator> all(base.ring.generators()->begin(), base.ring.generators()->end());
  all.push_back({"z", n});
  const Generators gens = make_generators(all);
  if (rank % 2 == 0) {
    relations.emplace_back("z^2", QPoly(gens));
  } else {
    const QPoly top = embed(pontrjagin.count("p" + std::to_string(n / 2))
                                ? pontrjagin.at("p" + std::to_string(n / 2))
                                : QPoly(base.ring.generators()),
                            gens);
    relations.emplace_back("z^2", top * Rational(1, 4));
    vertical.emplace_back("chi", "2*z");
  }
  return make_bundle_model(std::move(name), base, {{"z", n}}, relations, n, vertical);
}

// f_!: H*(E) -> H^{*-n}(B), the coefficient of the top fibre-basis element.
inline QPoly fiber_integrate(const BundleModel& model, const QPoly& x) {
  return model.coordinates(x).at(model.fibre_top);
}

// c(T_v E) for c over BSO(fibre_dimension).
inline QPoly vertical_class(const BundleModel& model, const QPoly& c) {
  const auto bso = RingPresentation::bso(model.fibre_dimension, model.total.truncation());
  const QPoly cc = poly_reduce(embed(c, bso.generators()), bso);
  return poly_substitute(cc, model.vertical, model.total);
}

// Generalized MMM class kappa_c = f_!(c(T_v E)).
inline QPoly mmm_class(const BundleModel& model, const QPoly& c) { return fiber_integrate(model, vertical_class(model, c)); }

// Total Hirzebruch L-class of a rank-n bundle, as a polynomial over BSO(n).
inline QPoly l_class_over_bso(int n, int max_degree) {
  const auto bso = RingPresentation::bso(n, std::max(max_degree, 0));
  const int m = n / 2;
  if (m == 0) return QPoly::constant(bso.generators(), 1);
  const auto l = multiplicative_sequence(genus_series(GenusKind::L, max_degree / 4), m, max_degree);
  return embed(l.total(), bso.generators());
}

inline Rational evaluate_on_base(const BaseSpace& base, const QPoly& x) {
  if (!base.fundamental) throw ConfigurationError("base has no fundamental class");
  return poly_reduce(x, base.ring).coefficient(*base.fundamental) * base.fundamental_value;
}

// sign(E) = < L(TB) f_!(L(T_v E)), [B] >.
inline Rational signature_via_L(const BundleModel& model) {
  const BaseSpace& base = model.base;
  if (!base.fundamental) throw ConfigurationError("model " + model.name + " has no fundamental class");
  const int d = base.dimension;
  QPoly l_base = QPoly::constant(base.ring.generators(), 1);
  if (!base.tangent.empty()) {
    const int n = 2 * (d / 4) + 1;
    const auto bso = RingPresentation::bso(n, d);
    Assignment<RationalField> tangent;
    for (const auto& g : *bso.generators()) {
      auto it = base.tangent.find(g.name);
      tangent.emplace(g.name, it != base.tangent.end() ? it->second : QPoly(base.ring.generators()));
    }
    for (const auto& [cls, poly] : base.tangent)
      if (!bso.generators()->find(cls)) throw PresentationMismatch("tangent class " + cls + " is above the base dimension");
    l_base = poly_substitute(l_class_over_bso(n, d), tangent, base.ring);
  }
  const QPoly integrated = mmm_class(model, l_class_over_bso(model.fibre_dimension, d + model.fibre_dimension));
  return evaluate_on_base(base, reduced_product(l_base, integrated, base.ring));
}

struct TransferCheck {
  QPoly fibre_integral;  // f_!(y(T_v) chi(T_v))
  QPoly transfer;        // chi(F) * (component of y(T_v) on the fibre-basis unit)
  int fibre_euler = 0;
  bool holds = false;
};

inline TransferCheck transfer_pullback_check(const BundleModel& model, const QPoly& y) {
  if (model.fibre_dimension % 2 != 0)
    throw InvalidArgument("transfer check needs an even-dimensional fibre");
  const QPoly yv = vertical_class(model, y);
  const QPoly chi = model.vertical.at("chi");
  TransferCheck r;
  r.fibre_integral = fiber_integrate(model, reduced_product(yv, chi, model.total));
  r.fibre_euler = model.fibre_euler_characteristic();
  const Exponents unit(model.fibre_top.size(), 0);
  r.transfer = model.coordinates(yv).at(unit) * Rational(r.fibre_euler);
  r.holds = r.fibre_integral == r.transfer;
  return r;
}

// Line-based model fixtures. Keys, one per line ('#' starts a comment):
//   model NAME
//   base-generators h:4 ...        base-relation h^3 = 0
//   base-dimension 8               fundamental h^2 = 1
//   base-tangent p1 = 2*h
// then either a sphere bundle
//   sphere-bundle 4                bundle-pontrjagin p1 = 2*h
//   bundle-euler 0
// or a general Leray-Hirsch fibre
//   fibre-generators z:2           fibre-relation z^2 = -h*z
//   fibre-dimension 2              vertical chi = 2*z + h
namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::pair<std::string, std::string> split_equation(const std::string& s, int line) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw ParseError("line " + std::to_string(line) + ": expected 'lhs = rhs'");
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

inline std::vector<Generator> parse_generator_list(const std::string& s, int line) {
  std::vector<Generator> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    const auto colon = tok.find(':');
    if (colon == std::string::npos || colon == 0) throw ParseError("line " + std::to_string(line) + ": expected name:degree");
    try {
      out.push_back({tok.substr(0, colon), std::stoi(tok.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(line) + ": bad degree in " + tok);
    }
  }
  return out;
}

}  // namespace detail

inline BundleModel parse_bundle_model(const std::string& text) {
  std::string name = "model";
  std::vector<Generator> base_gens, fibre_gens;
  std::vector<std::pair<std::string, std::string>> base_rel, fibre_rel, tangent, bundle_p, vertical;
  std::optional<std::pair<std::string, std::string>> fundamental;
  std::optional<int> base_dim, fibre_dim, sphere_rank;
  std::string euler = "0";

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  auto to_int = [&](const std::string& v) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::logic_error&) {
      throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + v + "'");
    }
  };
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto sp = s.find_first_of(" \t");
    const std::string key = s.substr(0, sp);
    const std::string val = sp == std::string::npos ? std::string() : detail::trim(s.substr(sp));
    if (key == "model") name = val;
    else if (key == "base-generators") base_gens = detail::parse_generator_list(val, line);
    else if (key == "base-relation") base_rel.push_back(detail::split_equation(val, line));
    else if (key == "base-dimension") base_dim = to_int(val);
    else if (key == "fundamental") fundamental = detail::split_equation(val, line);
    else if (key == "base-tangent") tangent.push_back(detail::split_equation(val, line));
    else if (key == "sphere-bundle") sphere_rank = to_int(val);
    else if (key == "bundle-pontrjagin") bundle_p.push_back(detail::split_equation(val, line));
    else if (key == "bundle-euler") euler = val;
    else if (key == "fibre-generators") fibre_gens = detail::parse_generator_list(val, line);
    else if (key == "fibre-relation") fibre_rel.push_back(detail::split_equation(val, line));
    else if (key == "fibre-dimension") fibre_dim = to_int(val);
    else if (key == "vertical") vertical.push_back(detail::split_equation(val, line));
    else throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
  }
  if (!base_dim) throw ParseError("model " + name + ": missing base-dimension");

  const Generators bg = make_generators(base_gens);
  std::vector<RewriteRule> rules;
  for (const auto& [lhs, rhs] : base_rel) {
    const QPoly l = parse_poly(lhs, bg);
    if (l.size() != 1 || l.terms().begin()->second != 1) throw ParseError("relation left side must be a generator power: " + lhs);
    const auto& e = l.terms().begin()->first;
    std::size_t which = e.size();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) which = which == e.size() ? i : e.size() + 1;
    if (which >= e.size()) throw ParseError("relation left side must be a generator power: " + lhs);
    rules.push_back({which, e[which], parse_poly(rhs, bg)});
  }
  BaseSpace base;
  base.ring = RingPresentation(bg, std::move(rules), kDefaultTruncation, name + "-base");
  base.dimension = *base_dim;
  if (fundamental) {
    const QPoly m = parse_poly(fundamental->first, bg);
    if (m.size() != 1 || m.terms().begin()->second != 1 || m.max_degree() != base.dimension)
      throw ParseError("fundamental class must be a monomial of degree " + std::to_string(base.dimension));
    const auto top = base.ring.monomial_basis(base.dimension);
    if (top.size() != 1 || top.front() != m.terms().begin()->first)
      throw ConfigurationError("fundamental monomial must span the top cohomology of the base");
    base.fundamental = m.terms().begin()->first;
    base.fundamental_value = parse_poly(fundamental->second, bg).constant_term();
  }
  for (const auto& [cls, poly] : tangent) base.tangent.emplace(cls, poly_reduce(parse_poly(poly, bg), base.ring));

  if (sphere_rank) {
    if (!fibre_gens.empty() || !vertical.empty()) throw ParseError("sphere-bundle models take no fibre data");
    Assignment<RationalField> pont;
    for (const auto& [cls, poly] : bundle_p) pont.emplace(cls, poly_reduce(parse_poly(poly, bg), base.ring));
    return sphere_bundle_model(*sphere_rank, base, pont, poly_reduce(parse_poly(euler, bg), base.ring), name);
  }
  if (!fibre_dim) throw ParseError("model " + name + ": missing fibre-dimension");
  std::vector<Generator> all = base_gens;
  all.insert(all.end(), fibre_gens.begin(), fibre_gens.end());
  const Generators tg = make_generators(all);
  std::vector<std::pair<std::string, QPoly>> rel;
  for (const auto& [lhs, rhs] : fibre_rel) rel.emplace_back(lhs, parse_poly(rhs, tg));
  return make_bundle_model(name, std::move(base), fibre_gens, rel, *fibre_dim, vertical);
}

}  // namespace charclass
