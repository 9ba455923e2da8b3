#include "qhdescent/report.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "qhdescent/bundled.hpp"
#include "qhdescent/errors.hpp"
#include "qhdescent/gallery.hpp"
#include "qhdescent/linalg.hpp"

namespace qhd::report {

using descent::Outcome;
using qring::ClassVector;
using qring::Manifold;
using qring::QElement;
using seidel::SeidelElement;

namespace {

Json make(const std::string& outcome, std::vector<std::string> summary, Json data) {
  Json r;
  r["outcome"] = outcome;
  r["summary"] = std::move(summary);
  r["data"] = std::move(data);
  return r;
}

Json optional_rational(const std::optional<Rational>& r) { return r ? io::to_json(*r) : Json(nullptr); }

Json valuations(const std::vector<novikov::Valuation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(io::valuation_string(v));
  return out;
}

Json element_json(const SeidelElement& s, const Manifold& m) {
  return {{"label", s.label}, {"element", qring::to_string(s.element, m)}, {"terms", io::to_json(s.element, m)}};
}

// Either criterion descending settles the question; both failing refutes it.
std::string combined(Outcome spectral, Outcome asymptotic) {
  if (spectral == Outcome::descend || asymptotic == Outcome::descend) return "descend";
  if (spectral == Outcome::not_descend && asymptotic == Outcome::not_descend) return "not_descend";
  return "undetermined";
}

Json estimate_json(const std::string& label, const descent::AsymptoticEstimate& e) {
  Json j;
  j["label"] = label;
  j["lower"] = optional_rational(e.lower);
  j["upper"] = io::to_json(e.upper);
  j["exact"] = optional_rational(e.exact);
  j["route"] = descent::to_string(e.route);
  j["k_max"] = e.k_max;
  j["powers"] = valuations(e.powers);
  j["inverse_powers"] = valuations(e.inverse_powers);
  j["notes"] = e.notes;
  return j;
}

Json witnesses_json(const std::vector<descent::Witness>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back({{"label", w.label}, {"reason", w.reason}});
  return out;
}

struct DescentParts {
  Json data;
  std::vector<std::string> summary;
  std::string outcome;
};

DescentParts descent_parts(const std::vector<SeidelElement>& elements, const Manifold& m, const Options& opt) {
  descent::AsymptoticResult details;
  const auto verdict = descent::decide(elements, m, opt.k_max, opt.floor, &details);
  DescentParts p;
  p.outcome = combined(verdict.spectral, verdict.asymptotic);
  p.data["spectral"] = descent::to_string(verdict.spectral);
  p.data["asymptotic"] = descent::to_string(verdict.asymptotic);
  p.data["witnesses"] = witnesses_json(verdict.witnesses);
  p.data["notes"] = verdict.notes;
  p.data["estimates"] = Json::array();
  for (const auto& s : elements) {
    const auto it = details.estimates.find(s.label);
    if (it != details.estimates.end()) p.data["estimates"].push_back(estimate_json(s.label, it->second));
  }
  p.summary.push_back("spectral: " + descent::to_string(verdict.spectral));
  p.summary.push_back("asymptotic: " + descent::to_string(verdict.asymptotic));
  for (const auto& w : verdict.witnesses) p.summary.push_back("witness " + w.label + ": " + w.reason);
  return p;
}

Json classification_json(const SeidelElement& s, const seidel::Classification& c) {
  Json cases = Json::array();
  for (const auto& cc : c.cases)
    cases.push_back({{"case", cc.name}, {"shape", cc.shape}, {"conforms", cc.conforms}, {"detail", cc.detail}});
  return {{"label", s.label}, {"conforms", c.conforms}, {"cases", cases}, {"violations", c.violations}};
}

Json context_json(const seidel::SeidelContext& ctx) {
  return {{"n", ctx.n},
          {"minimal_chern", ctx.minimal_chern ? Json(*ctx.minimal_chern) : Json("infinity")},
          {"monotonicity", seidel::to_string(ctx.monotonicity)},
          {"strongly_uniruled", ctx.strongly_uniruled},
          {"h2_rank", ctx.h2_rank}};
}

std::string vector_string(const ClassVector& v, const fibration::Fibration& f) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : v) {
    if (!out.empty()) out += " + ";
    out += (c == 1 ? std::string() : qhd::to_string(c) + " ") + f.class_name(e);
  }
  return out;
}

// Fiber class Poincare dual to omega on the lattice generators, if one exists.
std::optional<ClassVector> omega_dual(const Manifold& m) {
  const int rank = m.spec().h2_rank;
  if (rank == 0) return std::nullopt;
  std::vector<int> divisors;
  for (int i = 0; i < m.size(); ++i)
    if (m.degree(i) == 2 * m.n() - 2) divisors.push_back(i);
  if (divisors.empty()) return std::nullopt;
  linalg::Matrix a = linalg::zeros(rank, divisors.size());
  linalg::Vector b(rank);
  for (int g = 0; g < rank; ++g) {
    qring::Lattice e(rank, 0);
    e[g] = 1;
    for (std::size_t k = 0; k < divisors.size(); ++k) a[g][k] = m.beta_dot(e, {{divisors[k], Rational(1)}});
    b[g] = m.omega(e);
  }
  const auto x = linalg::solve(a, b);
  if (!x) return std::nullopt;
  ClassVector v;
  for (std::size_t k = 0; k < divisors.size(); ++k)
    if ((*x)[k] != 0) v[divisors[k]] = (*x)[k];
  return v;
}

Json check_json(const fibration::CheckReport& r) {
  constexpr std::size_t shown = 10;
  Json warnings = Json::array();
  for (std::size_t i = 0; i < r.warnings.size() && i < shown; ++i) warnings.push_back(r.warnings[i]);
  return {{"check", r.name},           {"passed", r.passed},     {"checked", r.checked},
          {"violations", r.violations}, {"warning_count", r.warnings.size()}, {"warnings", warnings}};
}

struct FibrationParts {
  Json data;
  std::vector<std::string> summary;
  bool passed = true;
};

FibrationParts fibration_parts(const fibration::Fibration& f) {
  FibrationParts p;
  p.data["fibration"] = f.spec().name;
  p.data["checks"] = Json::array();
  for (const auto& r : fibration::check_all(f)) {
    p.data["checks"].push_back(check_json(r));
    p.passed = p.passed && r.passed;
    p.summary.push_back("check " + r.name + ": " + (r.passed ? "passed" : "FAILED") + " (" +
                        std::to_string(r.checked) + " checked, " + std::to_string(r.violations.size()) +
                        " violations, " + std::to_string(r.warnings.size()) + " warnings)");
  }
  const Manifold& m = f.fiber();
  std::vector<ClassVector> s_values;
  try {
    Json table = Json::array();
    for (int a = 0; a < m.size(); ++a) {
      fibration::Warnings w;
      s_values.push_back(fibration::s_map(f, a, &w));
      table.push_back({{"class", m.class_name(a)},
                       {"s", vector_string(s_values.back(), f)},
                       {"warnings", std::vector<std::string>(w.begin(), w.end())}});
    }
    p.data["s_map"] = table;
  } catch (const Error& e) {
    s_values.clear();
    p.data["s_map"] = nullptr;
    p.data["s_map_unavailable"] = e.what();
  }
  const auto pd = omega_dual(m);
  if (!pd || s_values.empty()) {
    p.data["coupling"] = {{"status", "skipped"},
                          {"reason", !pd ? "omega has no Poincare dual among the divisor classes"
                                         : "s is unavailable without a nonzero one-point section invariant"}};
    p.summary.push_back("coupling: skipped");
    return p;
  }
  ClassVector h;
  for (const auto& [a, c] : *pd) qring::add_to(h, s_values[a], c);
  const auto cert = fibration::coupling_certificate(f, h);
  p.data["coupling"] = {{"H", vector_string(h, f)},
                        {"status", fibration::to_string(cert.status)},
                        {"conditions", cert.conditions},
                        {"details", cert.details},
                        {"conclusion", cert.conclusion}};
  p.summary.push_back("coupling for H = " + vector_string(h, f) + ": " + fibration::to_string(cert.status));
  return p;
}

Json basis_products(const Manifold& m) {
  Json table = Json::array();
  for (int i = 0; i < m.size(); ++i)
    for (int j = i; j < m.size(); ++j) {
      const QElement p = qring::quantum_product(QElement::basis(i), QElement::basis(j), m);
      table.push_back({{"a", m.class_name(i)}, {"b", m.class_name(j)}, {"product", qring::to_string(p, m)}});
    }
  return table;
}

// Shared scenario: products, elements, classification, descent, fibration checks.
struct Scenario {
  std::string name;
  const Manifold* manifold = nullptr;
  std::vector<SeidelElement> elements;
  std::optional<fibration::FibrationSpec> fibration;
};

Json run_scenario(const Scenario& sc, const Options& opt, std::vector<std::string> summary, Json data) {
  const Manifold& m = *sc.manifold;
  data["example"] = sc.name;
  data["manifold"] = m.name();
  data["quantum_products"] = basis_products(m);
  Json elements = Json::array();
  for (const auto& s : sc.elements) elements.push_back(element_json(s, m));
  data["elements"] = elements;
  bool violated = false;
  const auto ctx = seidel::context_for(m);
  data["context"] = context_json(ctx);
  data["classification"] = Json::array();
  for (const auto& s : sc.elements) {
    const auto c = seidel::classify_form(s, ctx, &m);
    data["classification"].push_back(classification_json(s, c));
    violated = violated || !c.conforms;
    summary.push_back("classify " + s.label + ": " + (c.conforms ? "conforms" : "VIOLATES"));
  }
  auto d = descent_parts(sc.elements, m, opt);
  data["descent"] = d.data;
  for (auto& line : d.summary) summary.push_back(std::move(line));
  if (sc.fibration) {
    const fibration::Fibration f(*sc.fibration);
    auto fp = fibration_parts(f);
    data["fibration"] = fp.data;
    violated = violated || !fp.passed;
    for (auto& line : fp.summary) summary.push_back(std::move(line));
  }
  return make(violated ? "violation" : d.outcome, std::move(summary), std::move(data));
}

Json product_example(const std::string& name, const std::string& manifold, const std::string& fib,
                     const std::string& first, const std::string& second, const Options& opt) {
  const Manifold m(gallery::manifold_spec(manifold));
  Scenario sc{name, &m, bundled::loop_elements(manifold, m), bundled::fibration_spec(fib)};
  const QElement p =
      qring::quantum_product(QElement::basis(m.index_of(first)), QElement::basis(m.index_of(second)), m);
  return run_scenario(sc, opt, {first + " * " + second + " = " + qring::to_string(p, m)}, Json::object());
}

Json blowup_cp2_example(const Options& opt) {
  seidel::BlowupParams params;
  params.delta = opt.delta;
  const auto loop = seidel::blowup_cp2_line(params);
  const Manifold& m = loop.manifold;
  const Rational formula = seidel::blowup_kappa(Rational(1, 2), opt.delta, 1, 3, 2);
  const QElement product = qring::quantum_product(loop.element.element, loop.inverse.element, m);
  const bool inverse_ok = product == QElement::unit(m);
  const auto solved = qring::invert_unit(loop.element.element, m, opt.floor);
  const bool solved_ok = qring::agree_above(solved.value, loop.inverse.element, opt.floor);
  const auto est = descent::asymptotic_valuation(loop.element.element, m, opt.k_max, opt.floor);

  Json data;
  data["delta"] = io::to_json(opt.delta);
  data["kappa"] = io::to_json(loop.kappa);
  data["kappa_formula"] = io::to_json(formula);
  data["inverse"] = element_json(loop.inverse, m);
  data["inverse_check"] = {{"product", qring::to_string(product, m)},
                           {"is_unit", inverse_ok},
                           {"solved_inverse_agrees", solved_ok},
                           {"route", solved.route == qring::InverseRoute::geometric_series ? "geometric_series"
                                                                                            : "linear_solve"}};
  std::vector<std::string> summary{
      "kappa = " + qhd::to_string(loop.kappa) + " (formula: " + qhd::to_string(formula) + ")",
      std::string("S * S^-1 = 1: ") + (inverse_ok ? "holds" : "FAILS"),
      std::string("solved inverse matches the closed form: ") + (solved_ok ? "yes" : "NO")};
  if (est.exact) summary.push_back("lim nu(S^k)/k = " + qhd::to_string(*est.exact));
  Scenario sc{"blowup-cp2", &m, {loop.element}, bundled::fibration_spec("blowup_cp2", opt.delta)};
  Json r = run_scenario(sc, opt, std::move(summary), std::move(data));
  if (!inverse_ok || !solved_ok || loop.kappa != formula) r["outcome"] = "violation";
  // Headline line carries the unit exponent.
  for (auto& line : r["summary"])
    if (line.get<std::string>().rfind("asymptotic: ", 0) == 0)
      line = line.get<std::string>() + ", κ = " + qhd::to_string(loop.kappa);
  return r;
}

Json blowup_t4_example(const Options& opt) {
  seidel::BlowupParams params;
  params.delta = opt.delta;
  const auto loop = seidel::blowup_t4_zero(params);
  const Manifold& m = loop.manifold;
  const auto est = descent::asymptotic_valuation(loop.element.element, m, opt.k_max, opt.floor);
  bool bounded = true;
  Json table = Json::array();
  for (std::size_t k = 0; k < est.powers.size(); ++k) {
    const auto& v = est.powers[k];
    const bool in_range = !v.is_bottom() && v.value() >= 0 && v.value() <= 2 * opt.delta;
    bounded = bounded && in_range;
    table.push_back({{"k", k + 1}, {"nu", io::valuation_string(v)}, {"within", in_range}});
  }
  Json data;
  data["delta"] = io::to_json(opt.delta);
  data["power_valuations"] = table;
  std::vector<std::string> summary{std::string("0 <= nu(S^k) <= 2 delta for k <= ") + std::to_string(opt.k_max) +
                                   ": " + (bounded ? "holds" : "FAILS")};
  if (est.exact) summary.push_back("lim nu(S^k)/k = " + qhd::to_string(*est.exact));
  Scenario sc{"blowup-t4", &m, {loop.element}, bundled::fibration_spec("blowup_t4", opt.delta)};
  Json r = run_scenario(sc, opt, std::move(summary), std::move(data));
  if (!bounded) r["outcome"] = "violation";
  return r;
}

Json torus_morse_example(const Options& opt) {
  const auto complex = bundled::torus_complex();
  const auto cycles = bundled::torus_cycles(complex);
  std::vector<Rational> grid;
  for (int s = 0; s < 10; ++s) grid.push_back(s);
  const Manifold m(gallery::t2_spec());
  LoopData loop{&m, bundled::loop_elements("t2", m)};
  Json r = ostrover_report(complex, cycles, Rational(2), grid, loop, opt);
  r["data"]["example"] = "torus-morse";
  r["data"]["complex"] = io::to_json(complex);
  return r;
}

}  // namespace

int exit_code(const std::string& outcome) {
  if (outcome == "ok" || outcome == "descend") return 0;
  if (outcome == "violation" || outcome == "not_descend") return 1;
  if (outcome == "undetermined") return 3;
  fail(ErrorKind::internal, "unknown outcome \"" + outcome + "\"");
}

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  return j.dump();
}

void render(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (is_scalar(value)) {
        out << pad << key << ": " << scalar_text(value) << "\n";
      } else if (value.empty()) {
        out << pad << key << ": (none)\n";
      } else if (value.is_array() && std::all_of(value.begin(), value.end(), is_scalar)) {
        out << pad << key << ":";
        for (std::size_t i = 0; i < value.size(); ++i) out << (i == 0 ? " " : ", ") << scalar_text(value[i]);
        out << "\n";
      } else {
        out << pad << key << ":\n";
        render(out, value, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (is_scalar(item)) {
        out << pad << "- " << scalar_text(item) << "\n";
      } else if (item.is_object() && std::all_of(item.begin(), item.end(), is_scalar)) {
        // Flat records print as one row.
        out << pad << "-";
        for (const auto& [key, value] : item.items()) out << " " << key << "=" << scalar_text(value);
        out << "\n";
      } else {
        out << pad << "-\n";
        render(out, item, indent + 2);
      }
    }
  } else {
    out << pad << scalar_text(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  if (const auto it = report.find("summary"); it != report.end())
    for (const auto& line : *it) out << line.get<std::string>() << "\n";
  if (const auto it = report.find("data"); it != report.end() && !it->empty()) {
    out << "\n";
    render(out, *it, 0);
  }
  return out.str();
}

Json nu_report(const novikov::Scalar& s) {
  const std::string nu = io::valuation_string(s.nu());
  Json r = make("ok", {nu}, nullptr);
  r["value"] = nu;
  r["certain"] = s.certain_nu().has_value();
  return r;
}

Json element_nu_report(const std::vector<SeidelElement>& elements, const Manifold& m) {
  Json table = Json::array();
  std::vector<std::string> summary;
  for (const auto& s : elements) {
    const std::string nu = io::valuation_string(qring::element_nu(s.element));
    table.push_back({{"label", s.label}, {"nu", nu}});
    summary.push_back(s.label + ": " + nu);
  }
  (void)m;
  return make("ok", std::move(summary), {{"valuations", table}});
}

Json product_report(const QElement& a, const QElement& b, const Manifold& m) {
  const QElement quantum = qring::quantum_product(a, b, m);
  const QElement classical = qring::classical_product(a, b, m);
  const auto deviation = qring::element_nu(quantum - classical);
  Json data{{"a", qring::to_string(a, m)},
            {"b", qring::to_string(b, m)},
            {"quantum", qring::to_string(quantum, m)},
            {"quantum_terms", io::to_json(quantum, m)},
            {"classical", qring::to_string(classical, m)},
            {"deviation_nu", io::valuation_string(deviation)}};
  return make("ok", {"a * b = " + qring::to_string(quantum, m)}, std::move(data));
}

Json invert_report(const std::vector<SeidelElement>& elements, const Manifold& m, const Options& opt) {
  Json table = Json::array();
  std::vector<std::string> summary;
  bool all_ok = true;
  for (const auto& s : elements) {
    const auto inv = qring::invert_unit(s.element, m, opt.floor);
    const QElement product = qring::quantum_product(s.element, inv.value, m);
    Rational check_floor = opt.floor;
    if (const auto f = qring::element_floor(product); f && *f > check_floor) check_floor = *f;
    const bool ok = qring::agree_above(product, QElement::unit(m), check_floor);
    all_ok = all_ok && ok;
    table.push_back({{"label", s.label},
                     {"inverse", qring::to_string(inv.value, m)},
                     {"inverse_terms", io::to_json(inv.value, m)},
                     {"route", inv.route == qring::InverseRoute::geometric_series ? "geometric_series" : "linear_solve"},
                     {"verified_above", io::to_json(check_floor)},
                     {"round_trip", ok}});
    summary.push_back(s.label + "^-1 = " + qring::to_string(inv.value, m));
  }
  return make(all_ok ? "ok" : "violation", std::move(summary), {{"inverses", table}});
}

Json classify_report(const std::vector<SeidelElement>& elements, const Manifold& m) {
  const auto ctx = seidel::context_for(m);
  Json table = Json::array();
  std::vector<std::string> summary;
  bool conforms = true;
  for (const auto& s : elements) {
    const auto c = seidel::classify_form(s, ctx, &m);
    conforms = conforms && c.conforms;
    table.push_back(classification_json(s, c));
    summary.push_back(s.label + ": " + (c.conforms ? "conforms" : "violates"));
  }
  return make(conforms ? "ok" : "violation", std::move(summary), {{"context", context_json(ctx)}, {"elements", table}});
}

Json descent_report(const std::vector<SeidelElement>& elements, const Manifold& m, const Options& opt) {
  auto p = descent_parts(elements, m, opt);
  return make(p.outcome, std::move(p.summary), std::move(p.data));
}

Json asymptotic_report(const std::vector<SeidelElement>& elements, const Manifold& m, const Options& opt) {
  const auto result = descent::asymptotic_descent(elements, m, opt.k_max, opt.floor);
  Json estimates = Json::array();
  std::vector<std::string> summary{"asymptotic: " + descent::to_string(result.outcome)};
  for (const auto& [label, est] : result.estimates) {
    estimates.push_back(estimate_json(label, est));
    summary.push_back(label + ": " + (est.exact ? "exact " + qhd::to_string(*est.exact) : "upper " + qhd::to_string(est.upper)));
  }
  return make(descent::to_string(result.outcome), std::move(summary),
              {{"asymptotic", descent::to_string(result.outcome)},
               {"witnesses", witnesses_json(result.witnesses)},
               {"estimates", estimates}});
}

Json morse_report(const morse::FiltrationComplex& c, const morse::Chain& cycle, bool negate) {
  const Rational value = negate ? morse::morse_to_spectral(cycle, c) : morse::spectral_number(cycle, c);
  const std::string label = negate ? "c(a, phi^H)" : "c_M(a, H)";
  return make("ok", {label + " = " + qhd::to_string(value)},
              {{"value", io::to_json(value)}, {"negated", negate}, {"cycle", io::to_json(cycle, c)}});
}

Json ostrover_report(const morse::FiltrationComplex& c, const std::vector<io::NamedCycle>& cycles,
                     const Rational& slope, const std::vector<Rational>& s_grid, const std::optional<LoopData>& loop,
                     const Options& opt) {
  std::map<std::string, Rational> values;
  Json value_table = Json::array();
  for (const auto& nc : cycles) {
    const Rational v = morse::morse_to_spectral(nc.cycle, c);
    values[nc.cls] = v;
    value_table.push_back({{"class", nc.cls}, {"value", io::to_json(v)}});
  }
  const auto growth = descent::ostrover_growth(values, slope, s_grid);
  Json rows = Json::array();
  for (const auto& row : growth)
    rows.push_back({{"s", io::to_json(row.s)}, {"class", row.cls}, {"value", io::to_json(row.value)}});

  Json data{{"slope", io::to_json(slope)}, {"base_values", value_table}, {"growth", rows}};
  std::vector<std::string> summary;
  descent::DescentVerdict verdict;
  if (loop) {
    auto d = descent_parts(loop->elements, *loop->manifold, opt);
    data["descent"] = d.data;
    for (auto& line : d.summary) summary.push_back(std::move(line));
    verdict = descent::decide(loop->elements, *loop->manifold, opt.k_max, opt.floor);
  } else {
    verdict.notes.push_back("no loop supplied");
  }
  const auto cert = descent::diameter_certificate(verdict, growth);
  data["certificate"] = {{"issued", cert.issued},
                         {"reason", cert.reason},
                         {"slope", io::to_json(cert.slope)},
                         {"chain", cert.chain},
                         {"lower_bound", cert.lower_bound}};
  std::string outcome = "undetermined";
  if (cert.issued) {
    outcome = "ok";
    summary.push_back("diameter certificate: issued, lower bound " + cert.lower_bound);
  } else {
    if (combined(verdict.spectral, verdict.asymptotic) == "not_descend") outcome = "not_descend";
    summary.push_back("diameter certificate: declined (" + cert.reason + ")");
  }
  return make(outcome, std::move(summary), std::move(data));
}

Json fibration_report(const fibration::Fibration& f) {
  auto p = fibration_parts(f);
  return make(p.passed ? "ok" : "violation", std::move(p.summary), std::move(p.data));
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"cp1", "cp2", "blowup-cp2", "blowup-t4", "s2xs2", "torus-morse"};
  return names;
}

Json example_report(const std::string& name, const Options& opt) {
  if (name == "cp1") return product_example("cp1", "cp1", "cp1_x_s2", "pt", "pt", opt);
  if (name == "cp2") return product_example("cp2", "cp2", "cp2_x_s2", "pt", "pt", opt);
  if (name == "blowup-cp2") return blowup_cp2_example(opt);
  if (name == "blowup-t4") return blowup_t4_example(opt);
  if (name == "s2xs2") return product_example("s2xs2", "s2xs2", "s2xs2_x_s2", "A", "B", opt);
  if (name == "torus-morse") return torus_morse_example(opt);
  fail(ErrorKind::precondition, "unknown example \"" + name + "\"");
}

Json all_examples_report(const Options& opt) {
  std::vector<std::future<Json>> runs;
  for (const auto& name : example_names())
    runs.push_back(std::async(std::launch::async, [name, opt] { return example_report(name, opt); }));
  Json examples = Json::object();
  std::vector<std::string> summary;
  bool violated = false;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    Json r = runs[i].get();
    const std::string outcome = r["outcome"].get<std::string>();
    violated = violated || outcome == "violation";
    summary.push_back(example_names()[i] + ": " + outcome);
    examples[example_names()[i]] = std::move(r);
  }
  return make(violated ? "violation" : "ok", std::move(summary), {{"examples", examples}});
}

}  // namespace qhd::report
