#include "qhdescent/morse.hpp"

#include <algorithm>
#include <set>

#include "qhdescent/errors.hpp"
#include "qhdescent/linalg.hpp"

namespace qhd::morse {

namespace {

void add_term(Chain& c, int g, const Rational& coef) {
  Rational& slot = c[g];
  slot += coef;
  if (slot == 0) c.erase(g);
}

}  // namespace

FiltrationComplex::FiltrationComplex(std::vector<Generator> generators, std::vector<BoundaryEntry> boundary)
    : generators_(std::move(generators)), entries_(std::move(boundary)), d_(generators_.size()) {
  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (g.name.empty()) fail(ErrorKind::schema, "generator with empty name");
    if (!names.insert(g.name).second) fail(ErrorKind::schema, "duplicate generator \"" + g.name + "\"");
    if (g.degree < 0) fail(ErrorKind::schema, "generator \"" + g.name + "\" has negative degree");
  }
  const int count = size();
  for (const auto& e : entries_) {
    if (e.from < 0 || e.from >= count || e.to < 0 || e.to >= count)
      fail(ErrorKind::schema, "boundary entry refers to an unknown generator");
    const Generator& src = generators_[e.from];
    const Generator& dst = generators_[e.to];
    if (dst.degree != src.degree - 1)
      fail(ErrorKind::schema, "boundary " + src.name + " -> " + dst.name + " does not lower the degree by one");
    if (cmp(dst.value, src.value) >= 0)
      fail(ErrorKind::schema, "boundary " + src.name + " -> " + dst.name + " does not strictly lower the value");
    add_term(d_[e.from], e.to, e.coef);
  }
  for (int g = 0; g < count; ++g)
    if (!this->boundary(d_[g]).empty()) fail(ErrorKind::schema, "d o d != 0 on generator \"" + generators_[g].name + "\"");
}

int FiltrationComplex::index_of(std::string_view name) const {
  for (int g = 0; g < size(); ++g)
    if (generators_[g].name == name) return g;
  fail(ErrorKind::schema, "unknown generator \"" + std::string(name) + "\"");
}

Chain FiltrationComplex::boundary(const Chain& c) const {
  Chain out;
  for (const auto& [g, coef] : c)
    for (const auto& [h, dc] : d_.at(g)) add_term(out, h, coef * dc);
  return out;
}

std::vector<Rational> FiltrationComplex::critical_values() const {
  std::vector<Rational> values;
  for (const auto& g : generators_) values.push_back(g.value);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

Rational spectral_number(const Chain& a, const FiltrationComplex& c) {
  if (a.empty()) fail(ErrorKind::precondition, "the zero chain has no spectral number");
  const int count = c.size();
  std::optional<int> degree;
  for (const auto& [g, coef] : a) {
    if (g < 0 || g >= count) fail(ErrorKind::precondition, "cycle refers to an unknown generator");
    if (degree && *degree != c.generators()[g].degree) fail(ErrorKind::precondition, "cycle is not homogeneous");
    degree = c.generators()[g].degree;
  }
  if (!c.boundary(a).empty()) fail(ErrorKind::precondition, "chain is not a cycle");

  // Column j of the boundary matrix is d(generator j).
  linalg::Matrix d = linalg::zeros(count, count);
  for (int g = 0; g < count; ++g)
    for (const auto& [h, coef] : c.boundary(Chain{{g, Rational(1)}})) d[h][g] = coef;
  linalg::Vector target(count);
  for (const auto& [g, coef] : a) target[g] = coef;
  if (linalg::solve(d, target)) fail(ErrorKind::precondition, "cycle is a boundary and represents zero");

  // Unknowns x (supported on the sublevel set) and y: d x = 0 and x + d y = a.
  for (const Rational& level : c.critical_values()) {
    std::vector<int> sub;
    for (int g = 0; g < count; ++g)
      if (cmp(c.generators()[g].value, level) <= 0) sub.push_back(g);
    const std::size_t cols = sub.size() + count;
    linalg::Matrix system = linalg::zeros(2 * count, cols);
    linalg::Vector rhs(2 * count);
    for (std::size_t j = 0; j < sub.size(); ++j)
      for (int r = 0; r < count; ++r) {
        system[r][j] = d[r][sub[j]];
        if (r == sub[j]) system[count + r][j] = 1;
      }
    for (int r = 0; r < count; ++r) {
      for (int j = 0; j < count; ++j) system[count + r][sub.size() + j] = d[r][j];
      rhs[count + r] = target[r];
    }
    if (linalg::solve(system, rhs)) return level;
  }
  fail(ErrorKind::internal, "cycle not represented in the full complex");
}

FiltrationComplex reversed(const FiltrationComplex& c, std::optional<int> dim) {
  int top = 0;
  for (const auto& g : c.generators()) top = std::max(top, g.degree);
  const int d = dim.value_or(top);
  if (d < top) fail(ErrorKind::precondition, "dimension below the top generator degree");
  std::vector<Generator> gens;
  for (const auto& g : c.generators()) gens.push_back({g.name, d - g.degree, -g.value});
  std::vector<BoundaryEntry> entries;
  for (const auto& e : c.boundary_entries()) entries.push_back({e.to, e.from, e.coef});
  return FiltrationComplex(std::move(gens), std::move(entries));
}

Rational morse_to_spectral(const Chain& a, const FiltrationComplex& h_complex, std::optional<int> dim) {
  return spectral_number(a, reversed(h_complex, dim));
}

}  // namespace qhd::morse
