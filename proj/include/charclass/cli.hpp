#pragma once

// Command-line front end. run_command never touches std::cout; the caller
// prints the returned streams. Exit codes: 0 ok, 1 verify-paper failure,
// 2 domain error, 64 usage or input parse error, 66 missing fixture.

#include <CLI11.hpp>
#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "charclass/acceptance.hpp"
#include "charclass/fixtures.hpp"
#include "charclass/genus.hpp"
#include "charclass/invariants.hpp"
#include "charclass/steenrod.hpp"
#include "charclass/thom.hpp"

namespace charclass {

struct CommandOutput {
  int exit = 0;
  std::string out;
  std::string err;
};

namespace cli {

using nlohmann::ordered_json;

constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;

// One report: text lines for humans, the JSON document for machines.
struct Report {
  std::string command;
  ordered_json inputs = ordered_json::object();
  ordered_json results = ordered_json::array();
  ordered_json warnings = ordered_json::array();
  std::ostringstream text;
  int exit = 0;

  std::string render(bool json) const {
    if (!json) return text.str();
    ordered_json doc;
    doc["command"] = command;
    doc["inputs"] = inputs;
    doc["results"] = results;
    doc["warnings"] = warnings;
    return doc.dump(2) + "\n";
  }
};

// Inverse of Report::render(true); text and exit are not part of the document.
inline Report parse_report(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report is not JSON: ") + e.what());
  }
  for (const char* key : {"command", "inputs", "results", "warnings"})
    if (!doc.contains(key)) throw ParseError(std::string("report lacks \"") + key + "\"");
  if (!doc["command"].is_string() || !doc["inputs"].is_object() || !doc["results"].is_array() ||
      !doc["warnings"].is_array())
    throw ParseError("report fields have the wrong JSON types");
  Report r;
  r.command = doc["command"].get<std::string>();
  r.inputs = doc["inputs"];
  r.results = doc["results"];
  r.warnings = doc["warnings"];
  return r;
}

inline std::string join(const std::vector<std::uint32_t>& xs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + std::to_string(xs[i]);
  return s;
}

inline void cmd_lclass(Report& r, int max_degree, const std::string& kind_name, int num_p) {
  const auto kind = parse_genus_kind(kind_name);
  if (max_degree < 0) throw InvalidArgument("max degree must be nonnegative");
  if (num_p < 0) num_p = std::max(1, max_degree / 4);
  r.inputs = {{"kind", to_string(kind)}, {"max_degree", max_degree}, {"num_p", num_p}};
  const auto seq = multiplicative_sequence(genus_series(kind, max_degree / 4), num_p, max_degree);
  r.text << "degree\tclass\n";
  for (int d = 0; d <= max_degree; d += 4) {
    const QPoly c = seq.component(d);
    r.text << d << '\t' << c.to_string() << '\n';
    r.results.push_back({{"degree", d}, {"class", c.to_string()}});
  }
}

inline void cmd_genus(Report& r, const std::string& kind_name, int order, int product_m, int max_degree,
                      int scaling_m, int scaling_k) {
  if (scaling_m > 0 || scaling_k > 0) {
    const auto s = scaling_relation_report(scaling_m, scaling_k);
    r.inputs = {{"scaling_m", scaling_m}, {"scaling_k", scaling_k}};
    r.results.push_back({{"m", s.m},
                         {"k", s.k},
                         {"ratio", to_string(s.ratio)},
                         {"is_power_of_two", s.is_power_of_two},
                         {"exponent", s.exponent},
                         {"reference_exponent", s.reference_exponent},
                         {"ltilde", s.ltilde_component.to_string()},
                         {"l", s.l_component.to_string()}});
    r.text << "ratio = " << to_string(s.ratio) << "\nexponent = " << s.exponent
           << "\nreference exponent (m - k) = " << s.reference_exponent << "\n";
    if (s.is_power_of_two && s.exponent != s.reference_exponent) {
      const std::string w = "measured exponent " + std::to_string(s.exponent) + " differs from m - k = " +
                            std::to_string(s.reference_exponent);
      r.warnings.push_back(w);
      r.text << "WARN: " << w << "\n";
    }
    return;
  }
  const auto kind = parse_genus_kind(kind_name);
  if (product_m > 0) {
    r.inputs = {{"kind", to_string(kind)}, {"m", product_m}, {"max_degree", max_degree}};
    const auto g = genus_product(genus_series(kind, max_degree / 4), product_m, max_degree);
    r.text << "degree\tclass\n";
    for (int d = 0; d <= max_degree; d += 4) {
      r.text << d << '\t' << g.component(d).to_string() << '\n';
      r.results.push_back({{"degree", d}, {"class", g.component(d).to_string()}});
    }
    return;
  }
  r.inputs = {{"kind", to_string(kind)}, {"order", order}};
  const auto s = genus_series(kind, order);
  r.text << s.to_string() << "\n";
  for (int k = 0; k <= order; ++k) r.results.push_back({{"power", k}, {"coefficient", to_string(s[k])}});
}

inline QPoly characteristic_class(const std::string& text, int rank, int max_degree) {
  if (text == "L") return l_class_over_bso(rank, max_degree);
  return parse_poly(text, RingPresentation::bso(rank).generators());
}

inline void cmd_mmm(Report& r, const std::string& model_name, const std::string& cls) {
  const auto model = load_model(model_name);
  const int top = model.base.dimension + model.fibre_dimension;
  const QPoly c = characteristic_class(cls, model.fibre_dimension, top);
  r.inputs = {{"model", model.name}, {"class", cls}};
  r.text << "model " << model.name << ", fibre dimension " << model.fibre_dimension << "\n";
  r.text << "degree\tkappa\n";
  for (int d : c.degrees()) {
    const QPoly k = mmm_class(model, c.component(d));
    r.text << d - model.fibre_dimension << '\t' << k.to_string() << '\n';
    r.results.push_back({{"class_degree", d}, {"degree", d - model.fibre_dimension}, {"kappa", k.to_string()}});
  }
}

inline void cmd_signature(Report& r, const std::string& model_name) {
  const auto model = load_model(model_name);
  const Rational s = signature_via_L(model);
  r.inputs = {{"model", model.name}};
  r.results.push_back({{"signature", to_string(s)}});
  r.text << "signature(" << model.name << ") = " << to_string(s) << "\n";
}

inline std::vector<int> parse_ops(const std::string& s) {
  std::vector<int> ops;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      ops.push_back(std::stoi(tok));
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad operation index '" + tok + "'");
    }
  }
  return ops;
}

inline void cmd_steenrod(Report& r, const std::string& table_name, bool prop63, const std::string& compare,
                         const std::string& element, const std::string& compose, bool thom) {
  const auto t = load_table(table_name);
  r.inputs = {{"table", t.name()}};
  if (prop63) {
    const auto s = splitting_obstruction(t);
    const auto p3 = power(3, ThomElement<PrimeField>{t.thom_shift(), FpPoly::constant(t.generators(), 1, t.field())}, t);
    r.inputs["prop63"] = true;
    r.results.push_back({{"p2p1_u", s.p2p1_u.to_string()},
                         {"p3_u", p3.to_string()},
                         {"q_u", s.q_u.to_string()},
                         {"restriction", s.restriction.to_string()},
                         {"splits", s.splits}});
    r.text << "table " << t.name() << " over F" << t.prime() << "\n";
    r.text << "P^3(u_" << t.thom_shift() << ") = " << p3.to_string() << "\n";
    r.text << "P^2 P^1(u_" << t.thom_shift() << ") = " << s.p2p1_u.to_string() << "\n";
    r.text << "Q(u_" << t.thom_shift() << ") = " << s.q_u.to_string() << "; restriction = " << s.restriction.to_string()
           << "; splits: " << (s.splits ? "true" : "false") << "\n";
    return;
  }
  if (!compare.empty()) {
    const auto other = load_table(compare);
    const auto cmp = compare_tables(t, other);
    r.inputs["compare"] = other.name();
    r.text << "entry\t" << t.name() << "\t" << other.name() << "\tnegated\n";
    for (const auto& d : cmp.discrepancies) {
      r.text << d.entry << '\t' << d.left.to_string() << '\t' << d.right.to_string() << '\t'
             << (d.negated ? "yes" : "no") << '\n';
      r.results.push_back({{"entry", d.entry}, {"left", d.left.to_string()}, {"right", d.right.to_string()},
                           {"negated", d.negated}});
    }
    if (cmp.odd_power_sign_flip) {
      r.warnings.push_back("differing P^i entries agree up to the sign (-1)^i");
      r.text << "WARN: differing P^i entries agree up to the sign (-1)^i\n";
    }
    return;
  }
  if (element.empty()) throw InvalidArgument("steenrod needs --prop63, --compare or --element");
  const FpPoly x = parse_poly(element, t.generators(), t.field());
  r.inputs["element"] = element;
  r.inputs["thom"] = thom;
  auto emit = [&](const std::string& label, const std::string& value) {
    r.text << label << " = " << value << "\n";
    r.results.push_back({{"operation", label}, {"value", value}});
  };
  if (!compose.empty()) {
    const auto ops = parse_ops(compose);
    r.inputs["compose"] = compose;
    std::string label;
    for (int i : ops) label += (label.empty() ? "" : " ") + std::string("P^") + std::to_string(i);
    if (thom)
      emit(label, compose_powers(ops, ThomElement<PrimeField>{t.thom_shift(), x}, t).to_string());
    else
      emit(label, compose_powers(ops, x, t).to_string());
    return;
  }
  if (thom) {
    const auto tp = total_power(ThomElement<PrimeField>{t.thom_shift(), x}, t);
    for (std::size_t i = 0; i < tp.components.size(); ++i) emit("P^" + std::to_string(i), tp.components[i].to_string());
  } else {
    const auto tp = total_power(x, t);
    for (std::size_t i = 0; i < tp.components.size(); ++i) emit("P^" + std::to_string(i), tp.components[i].to_string());
  }
}

inline void cmd_wu(Report& r, std::uint32_t p, int imax, int k, int kmax) {
  r.inputs = {{"p", p}};
  if (kmax >= 0) {
    const auto ks = wu_vanishing_degrees(p, kmax);
    r.inputs["kmax"] = kmax;
    std::string line;
    for (int x : ks) {
      line += (line.empty() ? "" : " ") + std::to_string(x);
      r.results.push_back(x);
    }
    r.text << line << "\n";
    return;
  }
  if (k > 0) {
    r.inputs["k"] = k;
    const auto tp = wu_thom_power_bso3(k, p, imax);
    for (std::size_t i = 0; i < tp.components.size(); ++i) {
      r.text << "P^" << i << "(u_-3*p1" << (k > 1 ? "^" + std::to_string(k) : "") << ") = " << tp.components[i].to_string()
             << "\n";
      r.results.push_back({{"i", i}, {"value", tp.components[i].to_string()}});
    }
    return;
  }
  r.inputs["imax"] = imax;
  r.text << "i\tcoefficient\n";
  for (int i = 0; i <= imax; ++i) {
    const Fp c = wu_coefficient(p, i);
    r.text << i << '\t' << c.value() << '\n';
    r.results.push_back({{"i", i}, {"coefficient", c.value()}});
  }
}

inline void cmd_primes(Report& r, int k, int kmax, std::uint32_t bound) {
  r.inputs = {{"k", k}, {"bound", bound}};
  if (kmax > 0) {
    r.inputs["kmax"] = kmax;
    r.text << primes_tsv(k, kmax, bound);
    for (int j = k; j <= kmax; ++j) r.results.push_back({{"k", j}, {"primes", vanishing_primes(j, bound)}});
    return;
  }
  const auto ps = vanishing_primes(k, bound);
  r.text << join(ps) << "\n";
  r.results.push_back({{"k", k}, {"primes", ps}});
}

inline void cmd_pi0(Report& r, int n, const std::string& bordism) {
  const auto table = load_bordism(bordism);
  const auto p = pi0_report(n, table);
  r.inputs = {{"n", n}, {"bordism", bordism}};
  r.results.push_back({{"n", p.n},
                       {"eul", p.eul},
                       {"kernel", p.kernel},
                       {"bordism", p.bordism},
                       {"group", p.group},
                       {"splitting", to_string(p.splitting)}});
  r.text << "0 -> " << p.kernel << " -> pi_0(MTSO(" << n << ")) -> " << p.bordism << " -> 0\n";
  r.text << "pi_0(MTSO(" << n << ")) = " << p.group << "\nsplitting: " << to_string(p.splitting) << "\n";
}

inline void cmd_invariants(Report& r, const std::string& manifold, int dim, const std::string& betti, int signature,
                           int adams, int kappa_k, std::uint32_t kappa_p) {
  if (adams >= 0) {
    r.inputs = {{"adams", adams}};
    const BigInt m = adams_m(adams);
    r.results.push_back({{"r", adams}, {"m", to_string(m)}});
    r.text << "m(" << adams << ") = " << to_string(m) << "\n";
    return;
  }
  if (kappa_k > 0) {
    const auto c = kappa_coefficient_unit(kappa_k, kappa_p);
    r.inputs = {{"k", kappa_k}, {"p", kappa_p}};
    r.results.push_back({{"value", to_string(c.value)},
                         {"sign_known", c.sign_known},
                         {"p_integral", c.p_integral},
                         {"unit_mod_p", c.unit_mod_p}});
    r.text << "|kappa coefficient| = " << to_string(c.value) << " (sign not determined)\np-integral: "
           << (c.p_integral ? "yes" : "no") << "\nunit mod p: " << (c.unit_mod_p ? "yes" : "no") << "\n";
    return;
  }
  ManifoldDescriptor m;
  if (!manifold.empty()) {
    m = find_manifold(manifold);
  } else {
    if (dim < 0 || betti.empty()) throw InvalidArgument("invariants needs --manifold or --dim with --betti");
    m = parse_manifolds("M " + std::to_string(dim) + " " + betti + " " + std::to_string(signature)).front();
  }
  r.inputs = {{"name", m.name}, {"dim", m.dim}};
  ordered_json row;
  row["euler_characteristic"] = to_string(euler_characteristic(m));
  r.text << "chi(" << m.name << ") = " << to_string(euler_characteristic(m)) << "\n";
  if (m.dim % 4 == 1) {
    row["kervaire"] = kervaire_semicharacteristic(m);
    r.text << "kerv = " << kervaire_semicharacteristic(m) << "\n";
  }
  if (m.dim % 4 != 3) {
    const auto s = splitting_value(m);
    row["splitting"] = to_string(s.kind);
    row["splitting_value"] = to_string(s.value);
    r.text << to_string(s.kind) << " = " << to_string(s.value) << "\n";
  } else {
    row["splitting"] = "none";
    r.text << "no splitting map needed\n";
  }
  r.results.push_back(row);
}

inline void cmd_verify(Report& r) {
  const auto report = run_acceptance();
  for (const auto& row : report.rows) {
    ordered_json j{{"id", row.id},
                   {"title", row.title},
                   {"anchor", row.anchor},
                   {"status", to_string(row.status)},
                   {"notes", row.notes}};
    r.results.push_back(j);
    for (const auto& w : row.warnings) r.warnings.push_back("criterion " + std::to_string(row.id) + ": " + w);
  }
  r.text << report.render();
  r.exit = report.ok() ? 0 : 1;
}

}  // namespace cli

// argv excludes the program name.
inline CommandOutput run_command(const std::vector<std::string>& argv) {
  using namespace cli;
  CLI::App app{"Exact characteristic-class computations", "charclass"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "emit the JSON report");

  Report rep;
  std::function<void()> action;

  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_flag("--json", json, "emit the JSON report");
    return sub;
  };

  int max_degree = 12, num_p = -1, order = 6, product_m = 0, scaling_m = 0, scaling_k = 0;
  std::string kind = "L";
  auto* lclass = add("lclass", "components of a multiplicative sequence");
  lclass->add_option("--max-degree", max_degree, "highest degree")->check(CLI::NonNegativeNumber);
  lclass->add_option("--kind", kind, "L, Ltilde, inv_linear or total_p");
  lclass->add_option("--num-p", num_p, "number of Pontrjagin generators");
  lclass->callback([&] { action = [&] { cmd_lclass(rep, max_degree, kind, num_p); }; });

  auto* genus = add("genus", "genus series, root products and the scaling report");
  genus->add_option("--kind", kind, "L, Ltilde, inv_linear or total_p");
  genus->add_option("--order", order, "series order")->check(CLI::NonNegativeNumber);
  genus->add_option("--product", product_m, "expand the product over m roots");
  genus->add_option("--max-degree", max_degree, "degree bound for --product");
  genus->add_option("--scaling-m", scaling_m, "scaling report: number of roots");
  genus->add_option("--scaling-k", scaling_k, "scaling report: degree 4k");
  genus->callback([&] {
    action = [&] { cmd_genus(rep, kind, order, product_m, max_degree, scaling_m, scaling_k); };
  });

  std::string model = "sphere-s3", cls = "L";
  auto* mmm = add("mmm", "generalized MMM classes of a bundle model");
  mmm->add_option("--model", model, "model fixture name or path");
  mmm->add_option("--class", cls, "characteristic class over BSO(fibre dim), or L");
  mmm->callback([&] { action = [&] { cmd_mmm(rep, model, cls); }; });

  auto* sig = add("signature", "signature of a bundle model's total space");
  sig->add_option("--model", model, "model fixture name or path");
  sig->callback([&] { action = [&] { cmd_signature(rep, model); }; });

  std::string table = "paper-verbatim-p3", compare, element, compose;
  bool prop63 = false, thom = false;
  auto* st = add("steenrod", "reduced powers from an action table");
  st->add_option("--table", table, "table fixture name or path");
  st->add_flag("--prop63", prop63, "Q = P^3 - P^2 P^1 on the Thom class and its restriction");
  st->add_option("--compare", compare, "compare with another table");
  st->add_option("--element", element, "polynomial over the table's generators");
  st->add_option("--compose", compose, "comma-separated indices, applied right to left");
  st->add_flag("--thom", thom, "treat the element as a Thom-class payload");
  st->callback([&] { action = [&] { cmd_steenrod(rep, table, prop63, compare, element, compose, thom); }; });

  std::uint32_t p = 3;
  int imax = 6, k = 0, kmax = -1;
  auto* wu = add("wu", "Wu-series coefficients and degrees");
  wu->add_option("--p", p, "odd prime");
  wu->add_option("--imax", imax, "largest index")->check(CLI::NonNegativeNumber);
  wu->add_option("--k", k, "total power of u_-3 p1^k");
  wu->add_option("--kmax", kmax, "list the degrees k = r i up to kmax");
  wu->callback([&] { action = [&] { cmd_wu(rep, p, imax, k, kmax); }; });

  int pk = 1, pkmax = 0;
  std::uint32_t bound = 100;
  auto* primes = add("primes", "primes of the Bernoulli vanishing gate");
  primes->add_option("--k", pk, "degree index k");
  primes->add_option("--kmax", pkmax, "emit a TSV table for k..kmax");
  primes->add_option("--bound", bound, "largest prime considered");
  primes->callback([&] { action = [&] { cmd_primes(rep, pk, pkmax, bound); }; });

  int n = 1;
  std::string bordism = "bordism";
  auto* pi0 = add("pi0", "structure of pi_0(MTSO(n))");
  pi0->add_option("--n", n, "dimension")->required();
  pi0->add_option("--bordism", bordism, "bordism fixture name or path");
  pi0->callback([&] { action = [&] { cmd_pi0(rep, n, bordism); }; });

  std::string manifold, betti;
  int dim = -1, signature = 0, adams = -1, kappa_k = 0;
  std::uint32_t kappa_p = 3;
  auto* inv = add("invariants", "manifold invariants, Adams numbers, kappa coefficients");
  inv->add_option("--manifold", manifold, "name in the manifold fixture");
  inv->add_option("--dim", dim, "dimension");
  inv->add_option("--betti", betti, "comma-separated Betti numbers");
  inv->add_option("--signature", signature, "signature");
  inv->add_option("--adams", adams, "print m(r)");
  inv->add_option("--kappa", kappa_k, "kappa coefficient for k");
  inv->add_option("--p", kappa_p, "prime for --kappa");
  inv->callback([&] { action = [&] { cmd_invariants(rep, manifold, dim, betti, signature, adams, kappa_k, kappa_p); }; });

  auto* verify = add("verify-paper", "run the acceptance suite");
  verify->callback([&] { action = [&] { cmd_verify(rep); }; });

  CommandOutput out;
  std::ostringstream o, e;
  try {
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    app.parse(args);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err, o, e);
    out.exit = code == 0 ? 0 : kExitUsage;
    out.out = o.str();
    out.err = e.str();
    return out;
  }
  for (auto* sub : app.get_subcommands()) rep.command = sub->get_name();
  try {
    action();
    out.exit = rep.exit;
    out.out = rep.render(json);
  } catch (const Error& err) {
    out.exit = dynamic_cast<const FixtureNotFound*>(&err) ? kExitNoInput
               : dynamic_cast<const ParseError*>(&err)    ? kExitUsage
                                                           : kExitDomain;
    ordered_json doc{{"command", rep.command}, {"error", {{"kind", err.kind()}, {"message", err.what()}}}};
    out.out = doc.dump(2) + "\n";
    out.err = std::string("error: ") + err.what() + "\n";
  }
  return out;
}

}  // namespace charclass
