#include "qhdescent/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "qhdescent/errors.hpp"

namespace qhd::io {

using novikov::Scalar;
using novikov::Term;

namespace {

[[noreturn]] void schema(std::string_view where, const std::string& what) {
  fail(ErrorKind::schema, std::string(where) + ": " + what);
}

const Json& field(const Json& j, const char* key, std::string_view where) {
  if (!j.is_object()) schema(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(where, std::string("missing field \"") + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  const auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

const Json& array_field(const Json& j, const char* key, std::string_view where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) schema(where, std::string("field \"") + key + "\" must be an array");
  return a;
}

long integer(const Json& j, std::string_view where) {
  if (!j.is_number_integer()) schema(where, "expected an integer");
  return j.get<long>();
}

std::string string_value(const Json& j, std::string_view where) {
  if (!j.is_string()) schema(where, "expected a string");
  return j.get<std::string>();
}

// Resolves a class given by name or index.
class Names {
 public:
  explicit Names(std::vector<std::string> names) : names_(std::move(names)) {}
  int resolve(const Json& j, std::string_view where) const {
    if (j.is_number_integer()) {
      const long i = j.get<long>();
      if (i < 0 || i >= static_cast<long>(names_.size())) schema(where, "class index " + std::to_string(i) + " out of range");
      return static_cast<int>(i);
    }
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == s) return static_cast<int>(i);
      schema(where, "unknown class \"" + s + "\"");
    }
    schema(where, "class references are names or indices");
  }
  const std::string& name(int i) const { return names_.at(i); }

 private:
  std::vector<std::string> names_;
};

qring::ClassVector vector_from_json(const Json& j, const Names& names, std::string_view where) {
  if (!j.is_array()) schema(where, "expected a list of {\"k\", \"coef\"}");
  qring::ClassVector v;
  for (const auto& e : j) {
    const Rational c = rational_from_json(field(e, "coef", where), where);
    if (c != 0) qring::add_to(v, {{names.resolve(field(e, "k", where), where), c}});
  }
  return v;
}

Json vector_to_json(const qring::ClassVector& v, const Names& names) {
  Json out = Json::array();
  for (const auto& [k, c] : v) out.push_back({{"k", names.name(k)}, {"coef", to_json(c)}});
  return out;
}

Names manifold_names(const qring::ManifoldSpec& spec) {
  std::vector<std::string> names;
  for (const auto& b : spec.basis) names.push_back(b.name);
  return Names(std::move(names));
}

Names extended_names(const qring::ManifoldSpec& spec) {
  std::vector<std::string> names;
  for (const auto& b : spec.basis) names.push_back(b.name);
  for (const auto& b : spec.basis) names.push_back(b.name + "*");
  return Names(std::move(names));
}

qring::Lattice lattice_from_json(const Json& j, std::string_view where) {
  if (!j.is_array()) schema(where, "lattice classes are integer lists");
  qring::Lattice beta;
  for (const auto& x : j) beta.push_back(integer(x, where));
  return beta;
}

}  // namespace

Json parse(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    fail(ErrorKind::parse, std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(column) +
                               ": malformed JSON (" + e.what() + ")");
  }
}

Json load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::parse, "cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

Rational rational_from_json(const Json& j, std::string_view where) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      schema(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rational(mpz_class(j.dump(), 10));
  if (j.is_number_float()) schema(where, "floating-point numbers are not accepted; write rationals as \"p/q\"");
  schema(where, "expected a rational \"p/q\"");
}

Json to_json(const Rational& r) { return qhd::to_string(r); }

Scalar scalar_from_json(const Json& j) {
  const char* where = "scalar";
  const Json* terms = &j;
  std::optional<Rational> floor;
  if (j.is_object()) {
    terms = &array_field(j, "terms", where);
    if (const Json* f = optional_field(j, "floor")) floor = rational_from_json(*f, where);
  }
  if (!terms->is_array()) schema(where, "expected a list of {\"eps\", \"coef\"}");
  std::vector<Term> parsed;
  for (const auto& t : *terms)
    parsed.push_back({rational_from_json(field(t, "eps", where), where), rational_from_json(field(t, "coef", where), where)});
  return Scalar::from_terms(std::move(parsed), floor);
}

Json to_json(const Scalar& s) {
  Json terms = Json::array();
  for (const auto& t : s.terms()) terms.push_back({{"eps", to_json(t.exponent)}, {"coef", to_json(t.coef)}});
  if (s.is_exact()) return terms;
  return Json{{"terms", terms}, {"floor", to_json(*s.floor())}};
}

std::string valuation_string(const novikov::Valuation& v) {
  return v.is_bottom() ? "-inf" : qhd::to_string(v.value());
}

qring::ManifoldSpec manifold_from_json(const Json& j) {
  const char* where = "manifold";
  qring::ManifoldSpec s;
  if (const Json* name = optional_field(j, "name")) s.name = string_value(*name, where);
  s.n = static_cast<int>(integer(field(j, "n", where), where));
  for (const auto& b : array_field(j, "basis", where))
    s.basis.push_back({string_value(field(b, "name", where), where),
                       static_cast<int>(integer(field(b, "degree", where), where))});
  const Names names = manifold_names(s);
  if (const Json* classical = optional_field(j, "classical")) {
    if (!classical->is_array()) schema(where, "field \"classical\" must be an array");
    for (const auto& e : *classical)
      s.classical.push_back({names.resolve(field(e, "i", where), where), names.resolve(field(e, "j", where), where),
                             vector_from_json(field(e, "result", where), names, where)});
  }
  s.h2_rank = static_cast<int>(integer(field(j, "h2_rank", where), where));
  for (const auto& w : array_field(j, "omega_vec", where)) s.omega.push_back(rational_from_json(w, where));
  for (const auto& c : array_field(j, "c1_vec", where)) s.c1.push_back(integer(c, where));
  if (const Json* gw = optional_field(j, "gw")) {
    if (!gw->is_array()) schema(where, "field \"gw\" must be an array");
    for (const auto& e : *gw) {
      const Json& classes = field(e, "classes", where);
      if (!classes.is_array() || classes.size() != 3) schema(where, "GW entries take exactly three classes");
      qring::GwEntry entry;
      entry.beta = lattice_from_json(field(e, "beta", where), where);
      for (int k = 0; k < 3; ++k) entry.classes[k] = names.resolve(classes[k], where);
      entry.value = rational_from_json(field(e, "value", where), where);
      s.gw.push_back(entry);
    }
  }
  if (const Json* h2 = optional_field(j, "h2_basis")) {
    if (!h2->is_array()) schema(where, "field \"h2_basis\" must be an array");
    for (const auto& v : *h2) s.h2_classes.push_back(vector_from_json(v, names, where));
  }
  return s;
}

Json to_json(const qring::ManifoldSpec& s) {
  const Names names = manifold_names(s);
  Json j;
  j["name"] = s.name;
  j["n"] = s.n;
  j["basis"] = Json::array();
  for (const auto& b : s.basis) j["basis"].push_back({{"name", b.name}, {"degree", b.degree}});
  j["classical"] = Json::array();
  for (const auto& e : s.classical)
    j["classical"].push_back({{"i", names.name(e.i)}, {"j", names.name(e.j)}, {"result", vector_to_json(e.result, names)}});
  j["h2_rank"] = s.h2_rank;
  j["omega_vec"] = Json::array();
  for (const auto& w : s.omega) j["omega_vec"].push_back(to_json(w));
  j["c1_vec"] = s.c1;
  j["gw"] = Json::array();
  for (const auto& e : s.gw)
    j["gw"].push_back({{"beta", e.beta},
                       {"classes", {names.name(e.classes[0]), names.name(e.classes[1]), names.name(e.classes[2])}},
                       {"value", to_json(e.value)}});
  if (!s.h2_classes.empty()) {
    j["h2_basis"] = Json::array();
    for (const auto& v : s.h2_classes) j["h2_basis"].push_back(vector_to_json(v, names));
  }
  return j;
}

qring::QElement element_from_json(const Json& j, const qring::Manifold& m) {
  const char* where = "element";
  if (!j.is_array()) schema(where, "expected a list of {\"class\", \"qpow\", \"scalar\"}");
  const Names names = manifold_names(m.spec());
  qring::QElement a;
  for (const auto& t : j) {
    const int cls = names.resolve(field(t, "class", where), where);
    const long qpow = optional_field(t, "qpow") ? integer(t.at("qpow"), where) : 0;
    a.add(cls, qpow, scalar_from_json(field(t, "scalar", where)));
  }
  return a;
}

Json to_json(const qring::QElement& a, const qring::Manifold& m) {
  Json out = Json::array();
  for (const auto& [key, s] : a.terms())
    out.push_back({{"class", m.class_name(key.first)}, {"qpow", key.second}, {"scalar", to_json(s)}});
  return out;
}

std::vector<seidel::SeidelElement> elements_from_json(const Json& j, const qring::Manifold& m) {
  const char* where = "elements";
  const Json* list = &j;
  if (j.is_object()) list = &array_field(j, "elements", where);
  if (!list->is_array()) schema(where, "expected a list of {\"label\", \"terms\"}");
  std::vector<seidel::SeidelElement> out;
  for (const auto& e : *list) {
    std::string label = "S" + std::to_string(out.size() + 1);
    if (const Json* l = optional_field(e, "label")) label = string_value(*l, where);
    out.push_back(seidel::make_element(element_from_json(field(e, "terms", where), m), m, label));
  }
  return out;
}

Json to_json(const std::vector<seidel::SeidelElement>& elements, const qring::Manifold& m) {
  Json list = Json::array();
  for (const auto& e : elements) list.push_back({{"label", e.label}, {"terms", to_json(e.element, m)}});
  return Json{{"elements", list}};
}

morse::FiltrationComplex complex_from_json(const Json& j) {
  const char* where = "complex";
  std::vector<morse::Generator> gens;
  for (const auto& g : array_field(j, "generators", where))
    gens.push_back({string_value(field(g, "name", where), where), static_cast<int>(integer(field(g, "degree", where), where)),
                    rational_from_json(field(g, "value", where), where)});
  std::vector<std::string> names;
  for (const auto& g : gens) names.push_back(g.name);
  const Names resolver(names);
  std::vector<morse::BoundaryEntry> boundary;
  if (const Json* b = optional_field(j, "boundary")) {
    if (!b->is_array()) schema(where, "field \"boundary\" must be an array");
    for (const auto& e : *b)
      boundary.push_back({resolver.resolve(field(e, "from", where), where), resolver.resolve(field(e, "to", where), where),
                          rational_from_json(field(e, "coef", where), where)});
  }
  return morse::FiltrationComplex(std::move(gens), std::move(boundary));
}

Json to_json(const morse::FiltrationComplex& c) {
  Json j;
  j["generators"] = Json::array();
  for (const auto& g : c.generators())
    j["generators"].push_back({{"name", g.name}, {"degree", g.degree}, {"value", to_json(g.value)}});
  j["boundary"] = Json::array();
  for (const auto& e : c.boundary_entries())
    j["boundary"].push_back(
        {{"from", c.generators()[e.from].name}, {"to", c.generators()[e.to].name}, {"coef", to_json(e.coef)}});
  return j;
}

morse::Chain cycle_from_json(const Json& j, const morse::FiltrationComplex& c) {
  const char* where = "cycle";
  const Json* list = &j;
  if (j.is_object()) list = &array_field(j, "cycle", where);
  if (!list->is_array()) schema(where, "expected a list of {\"generator\", \"coef\"}");
  morse::Chain chain;
  for (const auto& e : *list) {
    const int g = c.index_of(string_value(field(e, "generator", where), where));
    const Rational coef = rational_from_json(field(e, "coef", where), where);
    Rational& slot = chain[g];
    slot += coef;
    if (slot == 0) chain.erase(g);
  }
  return chain;
}

Json to_json(const morse::Chain& chain, const morse::FiltrationComplex& c) {
  Json out = Json::array();
  for (const auto& [g, coef] : chain) out.push_back({{"generator", c.generators()[g].name}, {"coef", to_json(coef)}});
  return out;
}

std::vector<NamedCycle> cycles_from_json(const Json& j, const morse::FiltrationComplex& c) {
  const char* where = "cycles";
  std::vector<NamedCycle> out;
  for (const auto& e : array_field(j, "cycles", where))
    out.push_back({string_value(field(e, "class", where), where), cycle_from_json(field(e, "cycle", where), c)});
  return out;
}

fibration::FibrationSpec fibration_from_json(const Json& j) {
  const char* where = "fibration";
  fibration::FibrationSpec f;
  f.fiber = manifold_from_json(j);
  f.name = f.fiber.name;
  if (const Json* name = optional_field(j, "fibration_name")) f.name = string_value(*name, where);
  const Names names = extended_names(f.fiber);
  const Json& sigma0 = field(j, "sigma0", where);
  f.sigma0_c1vert = integer(field(sigma0, "c1vert", where), where);
  f.sigma0_u = rational_from_json(field(sigma0, "u", where), where);
  if (const Json* cls = optional_field(sigma0, "class")) f.sigma0 = vector_from_json(*cls, names, where);
  if (const Json* sections = optional_field(j, "sections")) {
    if (!sections->is_array()) schema(where, "field \"sections\" must be an array");
    for (const auto& block : *sections) {
      fibration::PClass alpha{static_cast<int>(integer(field(block, "m", where), where)),
                              lattice_from_json(field(block, "beta", where), where)};
      for (const auto& e : array_field(block, "entries", where)) {
        const Json& classes = field(e, "classes", where);
        if (!classes.is_array()) schema(where, "entry classes must be a list");
        std::vector<int> idx;
        for (const auto& c : classes) idx.push_back(names.resolve(c, where));
        f.invariants.push_back({alpha, idx, rational_from_json(field(e, "value", where), where)});
      }
    }
  }
  if (const Json* products = optional_field(j, "p_intersection")) {
    if (!products->is_array()) schema(where, "field \"p_intersection\" must be an array");
    for (const auto& e : *products)
      f.p_intersection.push_back({names.resolve(field(e, "i", where), where), names.resolve(field(e, "j", where), where),
                                  vector_from_json(field(e, "result", where), names, where)});
  }
  if (const Json* complete = optional_field(j, "tables_complete")) {
    if (!complete->is_boolean()) schema(where, "\"tables_complete\" must be true or false");
    f.tables_complete = complete->get<bool>();
  }
  return f;
}

Json to_json(const fibration::FibrationSpec& f) {
  Json j = to_json(f.fiber);
  const Names names = extended_names(f.fiber);
  j["fibration_name"] = f.name;
  j["sigma0"] = {{"c1vert", f.sigma0_c1vert}, {"u", to_json(f.sigma0_u)}};
  if (!f.sigma0.empty()) j["sigma0"]["class"] = vector_to_json(f.sigma0, names);
  std::map<fibration::PClass, Json> blocks;
  for (const auto& e : f.invariants) {
    Json classes = Json::array();
    for (int c : e.classes) classes.push_back(names.name(c));
    blocks[e.alpha].push_back({{"classes", classes}, {"value", to_json(e.value)}});
  }
  j["sections"] = Json::array();
  for (const auto& [alpha, entries] : blocks)
    j["sections"].push_back({{"m", alpha.mult}, {"beta", alpha.beta}, {"entries", entries}});
  j["p_intersection"] = Json::array();
  for (const auto& p : f.p_intersection)
    j["p_intersection"].push_back({{"i", names.name(p.i)}, {"j", names.name(p.j)}, {"result", vector_to_json(p.result, names)}});
  j["tables_complete"] = f.tables_complete;
  return j;
}

}  // namespace qhd::io
