#include <algorithm>
#include <set>

#include "qhdescent/errors.hpp"
#include "qhdescent/linalg.hpp"
#include "qhdescent/qring.hpp"

namespace qhd::qring {

namespace {

[[noreturn]] void schema(const std::string& name, const std::string& what) {
  fail(ErrorKind::schema, (name.empty() ? std::string("manifold") : "manifold \"" + name + "\"") + ": " + what);
}

std::string show(const Lattice& beta) {
  std::string s = "[";
  for (std::size_t i = 0; i < beta.size(); ++i) s += (i ? "," : "") + std::to_string(beta[i]);
  return s + "]";
}

}  // namespace

void add_to(ClassVector& target, const ClassVector& v, const Rational& c) {
  if (c == 0) return;
  for (const auto& [k, x] : v) {
    Rational& slot = target[k];
    slot += c * x;
    if (slot == 0) target.erase(k);
  }
}

Manifold::Manifold(ManifoldSpec spec) : spec_(std::move(spec)) {
  const std::string& nm = spec_.name;
  const int n = spec_.n;
  const int size = static_cast<int>(spec_.basis.size());
  if (n < 1) schema(nm, "half-dimension n must be positive");
  if (size == 0) schema(nm, "basis is empty");

  std::set<std::string> names;
  for (int i = 0; i < size; ++i) {
    const auto& b = spec_.basis[i];
    if (b.name.empty()) schema(nm, "basis class " + std::to_string(i) + " has an empty name");
    if (!names.insert(b.name).second) schema(nm, "duplicate basis class name \"" + b.name + "\"");
    if (b.degree < 0 || b.degree > 2 * n || b.degree % 2 != 0)
      schema(nm, "basis class \"" + b.name + "\" must have even degree in [0, 2n]");
    if (b.degree == 2 * n) {
      if (unit_ >= 0) schema(nm, "more than one class of degree 2n (the fundamental class must be unique)");
      unit_ = i;
    }
    if (b.degree == 0) {
      if (point_ >= 0) schema(nm, "more than one class of degree 0 (the point class must be unique)");
      point_ = i;
    }
  }
  if (unit_ < 0) schema(nm, "no class of degree 2n (fundamental class)");
  if (point_ < 0) schema(nm, "no class of degree 0 (point class)");

  const auto h2 = static_cast<std::size_t>(spec_.h2_rank);
  if (spec_.h2_rank < 0) schema(nm, "h2_rank must be nonnegative");
  if (spec_.omega.size() != h2) schema(nm, "omega_vec length differs from h2_rank");
  if (spec_.c1.size() != h2) schema(nm, "c1_vec length differs from h2_rank");

  // Classical product table.
  auto check_index = [&](int i) {
    if (i < 0 || i >= size) schema(nm, "class index " + std::to_string(i) + " out of range");
  };
  std::vector<std::vector<std::optional<ClassVector>>> given(size, std::vector<std::optional<ClassVector>>(size));
  for (const auto& e : spec_.classical) {
    check_index(e.i);
    check_index(e.j);
    ClassVector clean;
    for (const auto& [k, c] : e.result) {
      check_index(k);
      if (c == 0) continue;
      if (degree(k) != degree(e.i) + degree(e.j) - 2 * n)
        schema(nm, "classical product " + class_name(e.i) + " * " + class_name(e.j) +
                       " has a component in the wrong degree (grading requires deg a + deg b - 2n)");
      clean[k] = c;
    }
    for (auto [a, b] : {std::pair{e.i, e.j}, std::pair{e.j, e.i}}) {
      if (given[a][b] && *given[a][b] != clean)
        schema(nm, "classical product " + class_name(a) + " * " + class_name(b) +
                       " is given inconsistently (the product must be commutative)");
      given[a][b] = clean;
    }
  }
  classical_.assign(size, std::vector<ClassVector>(size));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      if (i == unit_ || j == unit_) {
        const ClassVector expected{{i == unit_ ? j : i, Rational(1)}};
        if (given[i][j] && *given[i][j] != expected)
          schema(nm, "the fundamental class must act as the identity of the classical product");
        classical_[i][j] = expected;
      } else if (given[i][j]) {
        classical_[i][j] = *given[i][j];
      }
    }
  }

  // Intersection pairing and duals.
  linalg::Matrix p = linalg::zeros(size, size);
  pairing_.assign(size, std::vector<Rational>(size));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      auto it = classical_[i][j].find(point_);
      if (it != classical_[i][j].end()) p[i][j] = pairing_[i][j] = it->second;
    }
  }
  const auto inv = linalg::inverse(p);
  if (!inv) schema(nm, "the intersection pairing is degenerate (it must be perfect between complementary degrees)");
  duals_.assign(size, {});
  for (int i = 0; i < size; ++i)
    for (int l = 0; l < size; ++l)
      if ((*inv)[i][l] != 0) duals_[i][l] = (*inv)[i][l];

  // Lattice generators as homology classes.
  if (!spec_.h2_classes.empty()) {
    if (spec_.h2_classes.size() != h2) schema(nm, "h2_basis must list one class per lattice generator");
    for (const auto& v : spec_.h2_classes)
      for (const auto& [k, c] : v) {
        check_index(k);
        if (degree(k) != 2) schema(nm, "h2_basis entries must be combinations of degree-2 classes");
      }
    h2_classes_ = spec_.h2_classes;
  } else {
    std::vector<ClassVector> deg2;
    for (int i = 0; i < size; ++i)
      if (degree(i) == 2) deg2.push_back({{i, Rational(1)}});
    if (deg2.size() == h2) h2_classes_ = std::move(deg2);
  }

  // Gromov-Witten table: validation and symmetric closure.
  for (const auto& e : spec_.gw) {
    if (e.beta.size() != h2) schema(nm, "GW entry class " + show(e.beta) + " has the wrong lattice rank");
    if (std::all_of(e.beta.begin(), e.beta.end(), [](long x) { return x == 0; }))
      schema(nm, "GW entries with beta = 0 are classical and must not appear in the table");
    for (int c : e.classes) check_index(c);
    if (e.value == 0) continue;
    if (cmp(omega(e.beta), 0) <= 0)
      schema(nm, "GW entry in class " + show(e.beta) + " has omega(beta) <= 0 (energy must be positive)");
    int codim = 0;
    for (int c : e.classes) codim += 2 * n - degree(c);
    if (codim != 2 * n + 2 * c1(e.beta))
      schema(nm, "GW entry <" + class_name(e.classes[0]) + "," + class_name(e.classes[1]) + "," +
                     class_name(e.classes[2]) + ">_" + show(e.beta) + " violates the dimension axiom");
    std::array<int, 3> perm = e.classes;
    std::sort(perm.begin(), perm.end());
    do {
      auto [it, inserted] = gw_index_.emplace(std::pair{e.beta, perm}, e.value);
      if (!inserted && it->second != e.value)
        schema(nm, "GW table is not symmetric: conflicting values for a permutation of <" +
                       class_name(perm[0]) + "," + class_name(perm[1]) + "," + class_name(perm[2]) + ">_" +
                       show(e.beta));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::set<Lattice> classes;
  for (const auto& [key, value] : gw_index_) {
    gw_closed_.push_back({key.first, key.second, value});
    classes.insert(key.first);
  }
  curve_classes_.assign(classes.begin(), classes.end());

  // Basis product table.
  products_.assign(size, std::vector<std::vector<ProductTerm>>(size));
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      for (const auto& [k, c] : classical_[i][j]) products_[i][j].push_back({k, 0, Rational(0), c});
  for (const auto& e : gw_closed_) {
    const long qpow = -c1(e.beta);
    const Rational exponent = -omega(e.beta);
    for (const auto& [l, d] : duals_[e.classes[2]])
      products_[e.classes[0]][e.classes[1]].push_back({l, qpow, exponent, e.value * d});
  }
}

int Manifold::index_of(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (spec_.basis[i].name == name) return i;
  fail(ErrorKind::schema, "unknown basis class \"" + std::string(name) + "\" in manifold \"" + spec_.name + "\"");
}

Rational Manifold::pairing(const ClassVector& a, const ClassVector& b) const {
  Rational sum;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) sum += x * y * pairing_[i][j];
  return sum;
}

ClassVector Manifold::classical(const ClassVector& a, const ClassVector& b) const {
  ClassVector out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) add_to(out, classical_[i][j], x * y);
  return out;
}

Rational Manifold::omega(const Lattice& beta) const {
  Rational sum;
  for (std::size_t g = 0; g < beta.size(); ++g) sum += spec_.omega.at(g) * beta[g];
  return sum;
}

long Manifold::c1(const Lattice& beta) const {
  long sum = 0;
  for (std::size_t g = 0; g < beta.size(); ++g) sum += spec_.c1.at(g) * beta[g];
  return sum;
}

ClassVector Manifold::h2_class(const Lattice& beta) const {
  if (h2_classes_.empty())
    fail(ErrorKind::precondition, "manifold \"" + spec_.name + "\" has no homology classes for its H2 lattice");
  ClassVector out;
  for (std::size_t g = 0; g < beta.size(); ++g) add_to(out, h2_classes_.at(g), Rational(beta[g]));
  return out;
}

Rational Manifold::beta_dot(const Lattice& beta, const ClassVector& divisor) const {
  return pairing(h2_class(beta), divisor);
}

Rational Manifold::gw_value(const Lattice& beta, int i, int j, int k) const {
  auto it = gw_index_.find({beta, {i, j, k}});
  return it == gw_index_.end() ? Rational(0) : it->second;
}

Rational Manifold::gw_value(const Lattice& beta, const ClassVector& a, const ClassVector& b,
                            const ClassVector& c) const {
  Rational sum;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b)
      for (const auto& [k, z] : c) sum += x * y * z * gw_value(beta, i, j, k);
  return sum;
}

std::optional<Rational> Manifold::two_point(const Lattice& beta, const ClassVector& a, const ClassVector& b) const {
  if (h2_classes_.empty()) return std::nullopt;
  for (int d = 0; d < size(); ++d) {
    if (degree(d) != 2 * n() - 2) continue;
    const ClassVector divisor{{d, Rational(1)}};
    const Rational dot = beta_dot(beta, divisor);
    if (dot != 0) return gw_value(beta, a, b, divisor) / dot;
  }
  return std::nullopt;
}

}  // namespace qhd::qring
