#include "qhdescent/fibration.hpp"

#include <algorithm>
#include <array>

#include "qhdescent/errors.hpp"
#include "qhdescent/linalg.hpp"

namespace qhd::fibration {

namespace {

bool is_zero_lattice(const Lattice& beta) {
  return std::all_of(beta.begin(), beta.end(), [](long x) { return x == 0; });
}

std::string show_lattice(const Lattice& beta) {
  std::string s = "[";
  for (std::size_t i = 0; i < beta.size(); ++i) s += (i ? "," : "") + std::to_string(beta[i]);
  return s + "]";
}

void add_term(ClassVector& v, int k, const Rational& c) {
  if (c == 0) return;
  Rational& slot = v[k];
  slot += c;
  if (slot == 0) v.erase(k);
}

ClassVector unit_vector(int e) { return {{e, Rational(1)}}; }

}  // namespace

std::string to_string(const PClass& alpha) {
  const std::string b = show_lattice(alpha.beta);
  return alpha.mult == 0 ? b : "sigma0+" + b;
}

Fibration::Fibration(FibrationSpec spec) : spec_(std::move(spec)), fiber_(spec_.fiber) {
  const int top = 2 * n() + 2;
  auto schema = [&](const std::string& what) { fail(ErrorKind::schema, "fibration " + spec_.name + ": " + what); };
  auto check_index = [&](int e) {
    if (e < 0 || e >= size()) schema("extended class index " + std::to_string(e) + " out of range");
  };

  sigma0_ = spec_.sigma0.empty() ? unit_vector(lifted(fiber_.unit())) : spec_.sigma0;
  for (const auto& [e, c] : sigma0_) {
    check_index(e);
    if (degree(e) != 2) schema("sigma0 must be a combination of degree-2 classes");
  }
  if (pairing(sigma0_, unit_vector(fiber_.unit())) != 1) schema("sigma0 . M must equal 1");

  for (const auto& p : spec_.p_intersection) {
    check_index(p.i);
    check_index(p.j);
    for (const auto& [k, c] : p.result) {
      check_index(k);
      if (degree(k) != degree(p.i) + degree(p.j) - top)
        schema("product " + class_name(p.i) + "." + class_name(p.j) + " has a component of the wrong degree");
    }
    if (!is_lifted(p.i) || !is_lifted(p.j)) {
      if (product(p.i, p.j) != p.result)
        schema("product " + class_name(p.i) + "." + class_name(p.j) + " disagrees with the fiber product");
      continue;
    }
    if (cap_fiber(p.result) != fiber_.classical(fiber_.dual(base(p.i)), fiber_.dual(base(p.j))))
      schema("product " + class_name(p.i) + "." + class_name(p.j) + " does not restrict to the fiber product");
    const auto pt = p.result.find(fiber_.point());
    if (pt != p.result.end())
      schema("lifted classes " + class_name(p.i) + ", " + class_name(p.j) + " pair to " + qhd::to_string(pt->second) +
             " instead of 0");
    for (const auto& key : {std::pair{p.i, p.j}, std::pair{p.j, p.i}}) {
      const auto [it, fresh] = lifted_products_.emplace(key, p.result);
      if (!fresh && it->second != p.result)
        schema("conflicting products for " + class_name(p.i) + "." + class_name(p.j));
    }
  }

  const std::size_t rank = static_cast<std::size_t>(fiber_.spec().h2_rank);
  for (const auto& e : spec_.invariants) {
    if (e.classes.empty() || e.classes.size() > 3) schema("invariants take one to three insertions");
    for (int c : e.classes) check_index(c);
    if (e.alpha.mult != 0 && e.alpha.mult != 1) schema("section multiplicity must be 0 or 1");
    if (e.alpha.beta.size() != rank) schema("invariant class " + show_lattice(e.alpha.beta) + " has the wrong rank");
    if (e.alpha.mult == 0 && is_zero_lattice(e.alpha.beta))
      schema("entries in class 0 are classical and do not belong in the tables");
    std::vector<int> key = e.classes;
    std::sort(key.begin(), key.end());
    const auto [it, fresh] = table_.emplace(std::pair{e.alpha, key}, e.value);
    if (!fresh && it->second != e.value) schema("conflicting entries for one invariant");
  }
}

int Fibration::degree(int e) const {
  return is_lifted(e) ? 2 * n() + 2 - fiber_.degree(base(e)) : fiber_.degree(e);
}

std::string Fibration::class_name(int e) const {
  return is_lifted(e) ? fiber_.class_name(base(e)) + "*" : fiber_.class_name(e);
}

int Fibration::index_of(const std::string& name) const {
  for (int e = 0; e < size(); ++e)
    if (class_name(e) == name) return e;
  fail(ErrorKind::schema, "unknown class \"" + name + "\" in fibration " + spec_.name);
}

ClassVector Fibration::cap_fiber(const ClassVector& v) const {
  ClassVector out;
  for (const auto& [e, c] : v)
    if (is_lifted(e)) qring::add_to(out, fiber_.dual(base(e)), c);
  return out;
}

Rational Fibration::pairing(const ClassVector& x, const ClassVector& y) const {
  Rational sum;
  for (const auto& [e, c] : x) {
    const auto it = y.find(dual(e));
    if (it != y.end()) sum += c * it->second;
  }
  return sum;
}

std::optional<ClassVector> Fibration::product(int i, int j) const {
  if (is_lifted(i) && is_lifted(j)) {
    const auto it = lifted_products_.find({i, j});
    if (it == lifted_products_.end()) return std::nullopt;
    return it->second;
  }
  if (is_lifted(i)) std::swap(i, j);
  // A fiber class meets v in the fiber through v cap M.
  if (is_lifted(j)) return fiber_.classical(unit_vector(i), cap_fiber(unit_vector(j)));
  return ClassVector{};
}

std::optional<ClassVector> Fibration::product(const ClassVector& x, const ClassVector& y) const {
  ClassVector out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      const auto p = product(i, j);
      if (!p) return std::nullopt;
      qring::add_to(out, *p, a * b);
    }
  return out;
}

long Fibration::c1(const PClass& alpha) const {
  return alpha.mult * (spec_.sigma0_c1vert + 2) + fiber_.c1(alpha.beta);
}

Rational Fibration::dot(const PClass& alpha, const ClassVector& h) const {
  Rational d = alpha.mult * pairing(sigma0_, h);
  if (!is_zero_lattice(alpha.beta)) d += fiber_.beta_dot(alpha.beta, cap_fiber(h));
  return d;
}

bool Fibration::dimension_allowed(const PClass& alpha, const std::vector<int>& classes) const {
  const int top = 2 * n() + 2;
  long codim = 0;
  for (int c : classes) codim += top - degree(c);
  return codim == top + 2 * c1(alpha) + 2 * (static_cast<long>(classes.size()) - 3);
}

std::optional<Rational> Fibration::stored(const PClass& alpha, std::vector<int> classes) const {
  std::sort(classes.begin(), classes.end());
  const auto it = table_.find({alpha, classes});
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

Rational Fibration::gw(const PClass& alpha, const std::vector<int>& classes, Warnings* warnings) const {
  auto label = [&] {
    std::string s = "<";
    for (std::size_t i = 0; i < classes.size(); ++i) s += (i ? "," : "") + class_name(classes[i]);
    return s + ">_" + to_string(alpha);
  };
  if (alpha.mult == 0 && is_zero_lattice(alpha.beta)) {
    if (classes.size() != 3) return 0;
    for (const auto [x, y, z] : {std::array{0, 1, 2}, std::array{0, 2, 1}, std::array{1, 2, 0}})
      if (const auto p = product(classes[x], classes[y])) return pairing(*p, unit_vector(classes[z]));
    if (warnings) warnings->insert("missing product data for the classical " + label() + "; taken as 0");
    return 0;
  }
  if (!dimension_allowed(alpha, classes)) return 0;
  const int top = 2 * n() + 2;
  for (int c : classes)
    if (degree(c) == top) return 0;  // fundamental class insertion in a nonzero class
  if (const auto forced = fiber_reduction(*this, alpha, classes)) return *forced;
  if (const auto v = stored(alpha, classes)) return *v;
  if (classes.size() >= 2)
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (degree(classes[i]) != top - 2) continue;
      std::vector<int> rest = classes;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
      const Rational weight = dot(alpha, unit_vector(classes[i]));
      return weight == 0 ? Rational(0) : weight * gw(alpha, rest, warnings);
    }
  if (!spec_.tables_complete && warnings) warnings->insert("missing " + label() + " taken as 0");
  return 0;
}

Rational Fibration::gw(const PClass& alpha, const std::vector<ClassVector>& classes, Warnings* warnings) const {
  Rational sum;
  std::vector<int> idx(classes.size());
  std::vector<Rational> coef(classes.size() + 1, Rational(1));
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == classes.size()) {
      sum += coef[pos] * gw(alpha, idx, warnings);
      return;
    }
    for (const auto& [e, c] : classes[pos]) {
      idx[pos] = e;
      coef[pos + 1] = coef[pos] * c;
      self(self, pos + 1);
    }
  };
  recurse(recurse, 0);
  return sum;
}

std::vector<PClass> Fibration::relevant_classes() const {
  std::set<PClass> out;
  for (const auto& beta : fiber_.curve_classes()) out.insert({0, beta});
  for (const auto& [key, value] : table_) out.insert(key.first);
  return {out.begin(), out.end()};
}

seidel::SectionTable Fibration::section_table() const {
  seidel::SectionTable t;
  t.sigma0_c1vert = spec_.sigma0_c1vert;
  t.sigma0_u = spec_.sigma0_u;
  for (const auto& [key, value] : table_) {
    const auto& [alpha, classes] = key;
    if (alpha.mult != 1 || classes.size() != 1 || is_lifted(classes[0]) || value == 0) continue;
    t.entries.push_back({alpha.beta, classes[0], value});
  }
  return t;
}

std::optional<Rational> fiber_reduction(const Fibration& f, const PClass& alpha, const std::vector<int>& classes) {
  if (alpha.mult != 0 || is_zero_lattice(alpha.beta)) return std::nullopt;
  std::vector<int> fiber_slots;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (!f.is_lifted(classes[i])) fiber_slots.push_back(static_cast<int>(i));
  if (fiber_slots.empty() || classes.size() == 1) return std::nullopt;
  if (fiber_slots.size() >= 2) return Rational(0);
  const ClassVector a = unit_vector(classes[fiber_slots[0]]);
  std::vector<ClassVector> rest;
  for (std::size_t i = 0; i < classes.size(); ++i)
    if (static_cast<int>(i) != fiber_slots[0]) rest.push_back(f.cap_fiber(unit_vector(classes[i])));
  if (classes.size() == 3) return f.fiber().gw_value(alpha.beta, a, rest[0], rest[1]);
  return f.fiber().two_point(alpha.beta, a, rest[0]);
}

FibrationSpec product_fibration(const qring::ManifoldSpec& fiber_spec) {
  const Manifold m(fiber_spec);
  const int size = m.size();
  FibrationSpec f;
  f.name = m.name() + "_x_s2";
  f.fiber = fiber_spec;
  f.tables_complete = true;
  const PClass sigma0{1, Lattice(static_cast<std::size_t>(fiber_spec.h2_rank), 0)};
  auto entry = [&](const PClass& alpha, std::vector<int> classes, const Rational& value) {
    if (value != 0) f.invariants.push_back({alpha, std::move(classes), value});
  };

  // Constant sections: r0 = 1, two fiber points pair classically, three multiply classically.
  entry(sigma0, {m.point()}, 1);
  for (int a = 0; a < size; ++a)
    for (int b = a; b < size; ++b) {
      entry(sigma0, {a, b}, m.pairing(a, b));
      for (int c = b; c < size; ++c) entry(sigma0, {a, b, c}, m.pairing(m.classical(a, b), unit_vector(c)));
    }
  // Sections sigma0 + beta are graphs of beta-spheres; only three fiber insertions survive.
  for (const auto& beta : m.curve_classes())
    for (int a = 0; a < size; ++a)
      for (int b = a; b < size; ++b)
        for (int c = b; c < size; ++c) entry({1, beta}, {a, b, c}, m.gw_value(beta, a, b, c));

  // Fiber-class curves sit in one fiber: one fiber point constraint, two lifted ones.
  for (const auto& beta : m.curve_classes())
    for (int a = 0; a < size; ++a)
      for (int i = 0; i < size; ++i)
        for (int j = i; j < size; ++j)
          entry({0, beta}, {a, i + size, j + size}, m.gw_value(beta, unit_vector(a), m.dual(i), m.dual(j)));

  // xi_i^* . xi_j^* = (xi_i^{*M} . xi_j^{*M}) x S^2.
  for (int i = 0; i < size; ++i)
    for (int j = i; j < size; ++j) {
      const ClassVector z = m.classical(m.dual(i), m.dual(j));
      ClassVector lifted;
      for (int k = 0; k < size; ++k) add_term(lifted, k + size, m.pairing(z, unit_vector(k)));
      f.p_intersection.push_back({i + size, j + size, lifted});
    }
  return f;
}

FibrationSpec fibration_from_seidel(const Manifold& m, const seidel::SeidelElement& s, long sigma0_c1vert,
                                    const Rational& sigma0_u, std::string name) {
  if (!s.element.is_exact()) fail(ErrorKind::precondition, "section tables need an exact Seidel element");
  const std::size_t rank = static_cast<std::size_t>(m.spec().h2_rank);
  linalg::Matrix system = linalg::zeros(2, rank);
  for (std::size_t g = 0; g < rank; ++g) {
    Lattice e(rank, 0);
    e[g] = 1;
    system[0][g] = m.c1(e);
    system[1][g] = m.omega(e);
  }
  if (linalg::rank(system) != rank)
    fail(ErrorKind::precondition, "(c1, omega) does not determine the section class");

  auto section_class = [&](long c1vert, const Rational& u) {
    const auto x = linalg::solve(system, {Rational(c1vert - sigma0_c1vert), u - sigma0_u});
    if (!x) fail(ErrorKind::precondition, "term of the Seidel element matches no section class");
    Lattice beta;
    for (const auto& c : *x) {
      if (!is_integer(c)) fail(ErrorKind::precondition, "term of the Seidel element matches no integral section class");
      beta.push_back(c.get_num().get_si());
    }
    return PClass{1, beta};
  };

  // Coefficients of xi_i^{*M} q^{-c1vert} t^{-u}, grouped by section class.
  auto read_off = [&](const qring::QElement& x) {
    std::map<PClass, ClassVector> by_section;
    for (const auto& [key, scalar] : x.terms())
      for (const auto& term : scalar.terms())
        add_term(by_section[section_class(-key.second, -term.exponent)], key.first, term.coef);
    return by_section;
  };

  FibrationSpec f;
  f.name = std::move(name);
  f.fiber = m.spec();
  f.sigma0_c1vert = sigma0_c1vert;
  f.sigma0_u = sigma0_u;
  for (const auto& [alpha, vec] : read_off(s.element))
    for (int i = 0; i < m.size(); ++i) {
      const Rational v = m.pairing(vec, unit_vector(i));
      if (v != 0) f.invariants.push_back({alpha, {i}, v});
    }
  std::map<std::pair<PClass, std::vector<int>>, Rational> two_point;
  for (int b = 0; b < m.size(); ++b)
    for (const auto& [alpha, vec] : read_off(qring::quantum_product(s.element, qring::QElement::basis(b), m)))
      for (int i = 0; i < m.size(); ++i) {
        const Rational v = m.pairing(vec, unit_vector(i));
        const std::vector<int> key{std::min(b, i), std::max(b, i)};
        const auto [it, fresh] = two_point.emplace(std::pair{alpha, key}, v);
        if (!fresh && it->second != v) fail(ErrorKind::internal, "two-point section table is not symmetric");
      }
  for (const auto& [key, v] : two_point)
    if (v != 0) f.invariants.push_back({key.first, key.second, v});
  return f;
}

}  // namespace qhd::fibration
