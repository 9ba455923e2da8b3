#pragma once

// Generators and independent oracles shared by the unit and acceptance tests.
// Oracles recompute results from first principles with plain containers; they
// share only Rational and, where noted, exact Scalar arithmetic with the engine.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhdescent/descent.hpp"
#include "qhdescent/fibration.hpp"
#include "qhdescent/gallery.hpp"
#include "qhdescent/linalg.hpp"
#include "qhdescent/morse.hpp"
#include "qhdescent/novikov.hpp"
#include "qhdescent/qring.hpp"
#include "qhdescent/seidel.hpp"

namespace qhd::testing {

using novikov::Scalar;
using qring::Manifold;
using qring::QElement;
using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

// p/q with |p| <= range and q in {1, 2, 3, 5}.
inline Rational random_rational(Rng& rng, long range = 6) {
  static const long dens[] = {1, 2, 3, 5};
  Rational r(uniform(rng, -range, range), dens[uniform(rng, 0, 3)]);
  r.canonicalize();
  return r;
}

inline Rational random_nonzero(Rng& rng, long range = 5) {
  Rational r;
  do r = random_rational(rng, range);
  while (r == 0);
  return r;
}

// Exact scalar with 1..max_terms nonzero terms.
inline Scalar random_scalar(Rng& rng, int max_terms = 3) {
  std::vector<novikov::Term> terms;
  const long count = uniform(rng, 1, max_terms);
  for (long i = 0; i < count; ++i) terms.push_back({random_rational(rng), random_nonzero(rng)});
  Scalar s = Scalar::from_terms(std::move(terms));
  return s.has_terms() ? s : Scalar::monomial(random_nonzero(rng), random_rational(rng));
}

// Dense oracle: exponent -> coefficient with no zero entries.
using Dense = std::map<Rational, Rational>;

inline Dense dense(const Scalar& s) {
  Dense d;
  for (const auto& t : s.terms()) d[t.exponent] += t.coef;
  return d;
}

inline void prune(Dense& d) {
  for (auto it = d.begin(); it != d.end();) it = it->second == 0 ? d.erase(it) : std::next(it);
}

inline Dense dense_add(const Dense& a, const Dense& b) {
  Dense out = a;
  for (const auto& [e, c] : b) out[e] += c;
  prune(out);
  return out;
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
  Dense out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) out[ea + eb] += ca * cb;
  prune(out);
  return out;
}

// Leading exponent; nullopt for zero.
inline std::optional<Rational> dense_nu(const Dense& d) {
  if (d.empty()) return std::nullopt;
  return d.rbegin()->first;
}

// Random element with terms at arbitrary q-powers.
inline QElement random_element(Rng& rng, const Manifold& m, int max_terms = 3) {
  QElement a;
  const long count = uniform(rng, 1, max_terms);
  for (long i = 0; i < count; ++i)
    a.add(static_cast<int>(uniform(rng, 0, m.size() - 1)), uniform(rng, -2, 2), random_scalar(rng, 2));
  return a;
}

// Homogeneous degree-2n element mu (x) 1 + y with y free of the unit class.
inline QElement random_unit_shape(Rng& rng, const Manifold& m, const Scalar& mu, double density = 0.7) {
  QElement u = QElement::basis(m.unit(), 0, mu);
  for (int c = 0; c < m.size(); ++c) {
    if (c == m.unit()) continue;
    const int gap = 2 * m.n() - m.degree(c);
    if (gap % 2 != 0) continue;
    if (std::uniform_real_distribution<double>(0, 1)(rng) > density) continue;
    u.add(c, gap / 2, random_scalar(rng, 2));
  }
  return u;
}

// Quantum product of basis classes from the closed GW table:
// a * b = a . b + sum_beta GW_beta(a, b, xi_k) dual(xi_k) q^{-c1 beta} t^{-omega beta}.
inline std::map<std::pair<int, long>, Dense> oracle_basis_product(const Manifold& m, int i, int j) {
  std::map<std::pair<int, long>, Dense> out;
  for (const auto& [k, c] : m.classical(i, j)) out[{k, 0}][Rational(0)] += c;
  for (const auto& e : m.gw()) {
    if (e.classes[0] != i || e.classes[1] != j) continue;
    const long qpow = -m.c1(e.beta);
    const Rational exponent = -m.omega(e.beta);
    for (const auto& [k, c] : m.dual(e.classes[2])) out[{k, qpow}][exponent] += e.value * c;
  }
  for (auto it = out.begin(); it != out.end();) {
    prune(it->second);
    it = it->second.empty() ? out.erase(it) : std::next(it);
  }
  return out;
}

inline std::map<std::pair<int, long>, Dense> dense_element(const QElement& a) {
  std::map<std::pair<int, long>, Dense> out;
  for (const auto& [key, s] : a.terms()) {
    Dense d = dense(s);
    if (!d.empty()) out[key] = d;
  }
  return out;
}

// Rank criterion for c_M: a lies in Im iota_kappa iff rank [B | Z_kappa] = rank [B | Z_kappa | a],
// with B the boundaries and Z_kappa the cycles supported on values <= kappa.
inline Rational oracle_spectral_number(const morse::Chain& a, const morse::FiltrationComplex& c) {
  const int n = c.size();
  linalg::Matrix d = linalg::zeros(n, n);  // column g = boundary of generator g
  for (const auto& e : c.boundary_entries()) d[e.to][e.from] += e.coef;
  std::vector<linalg::Vector> boundaries;
  for (int g = 0; g < n; ++g) {
    linalg::Vector col(n);
    for (int r = 0; r < n; ++r) col[r] = d[r][g];
    boundaries.push_back(col);
  }
  linalg::Vector target(n);
  for (const auto& [g, coef] : a) target[g] = coef;
  for (const Rational& level : c.critical_values()) {
    std::vector<int> sub;
    for (int g = 0; g < n; ++g)
      if (c.generators()[g].value <= level) sub.push_back(g);
    linalg::Matrix restricted = linalg::zeros(n, sub.size());
    for (int r = 0; r < n; ++r)
      for (std::size_t k = 0; k < sub.size(); ++k) restricted[r][k] = d[r][sub[k]];
    std::vector<linalg::Vector> columns = boundaries;
    for (const auto& z : linalg::kernel(restricted, sub.size())) {
      linalg::Vector full(n);
      for (std::size_t k = 0; k < sub.size(); ++k) full[sub[k]] = z[k];
      columns.push_back(full);
    }
    auto as_matrix = [&](const std::vector<linalg::Vector>& cols) {
      linalg::Matrix mtx = linalg::zeros(n, cols.size());
      for (std::size_t k = 0; k < cols.size(); ++k)
        for (int r = 0; r < n; ++r) mtx[r][k] = cols[k][r];
      return mtx;
    };
    const auto without = linalg::rank(as_matrix(columns));
    columns.push_back(target);
    if (linalg::rank(as_matrix(columns)) == without) return level;
  }
  throw std::logic_error("oracle: class never appears");
}

// Random filtered complex: cancelling pairs and free generators with distinct
// values, conjugated by a filtration-preserving unitriangular change of basis.
inline morse::FiltrationComplex random_complex(Rng& rng, int max_generators = 8) {
  const int n = static_cast<int>(uniform(rng, 2, max_generators));
  std::vector<int> degree(n);
  std::vector<Rational> value(n);
  std::vector<int> order(n);
  for (int g = 0; g < n; ++g) order[g] = g;
  std::shuffle(order.begin(), order.end(), rng);
  for (int g = 0; g < n; ++g) {
    value[g] = Rational(order[g] * 3 + uniform(rng, 0, 2), 2);
    value[g].canonicalize();
  }
  // Distinct values: order[g] * 3 + {0,1,2} never collide across g.
  for (int g = 0; g < n; ++g) degree[g] = static_cast<int>(uniform(rng, 0, 3));
  linalg::Matrix d = linalg::zeros(n, n);  // d[to][from]
  std::vector<bool> used(n, false);
  for (int x = 0; x < n; ++x) {
    if (used[x]) continue;
    for (int y = 0; y < n; ++y) {
      if (y == x || used[y] || degree[y] != degree[x] - 1 || value[y] >= value[x]) continue;
      if (uniform(rng, 0, 1) == 0) continue;
      d[y][x] = random_nonzero(rng, 3);
      used[x] = used[y] = true;
      break;
    }
  }
  // B[i][j] != 0 only for i == j or (same degree and value[i] < value[j]).
  linalg::Matrix b = linalg::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && degree[i] == degree[j] && value[i] < value[j] && uniform(rng, 0, 2) == 0)
        b[i][j] = random_rational(rng, 3);
  const auto b_inv = *linalg::inverse(b);
  auto mul = [n](const linalg::Matrix& x, const linalg::Matrix& y) {
    linalg::Matrix z = linalg::zeros(n, n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        if (x[i][k] != 0)
          for (int j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
  };
  const auto conj = mul(b_inv, mul(d, b));
  std::vector<morse::Generator> gens;
  for (int g = 0; g < n; ++g) gens.push_back({"g" + std::to_string(g), degree[g], value[g]});
  std::vector<morse::BoundaryEntry> entries;
  for (int from = 0; from < n; ++from)
    for (int to = 0; to < n; ++to)
      if (conj[to][from] != 0) entries.push_back({from, to, conj[to][from]});
  return morse::FiltrationComplex(std::move(gens), std::move(entries));
}

// Homogeneous cycles that are not boundaries, one random combination per degree.
inline std::vector<morse::Chain> random_classes(Rng& rng, const morse::FiltrationComplex& c) {
  const int n = c.size();
  std::vector<morse::Chain> out;
  for (int deg = 0; deg <= 3; ++deg) {
    std::vector<int> sub;
    for (int g = 0; g < n; ++g)
      if (c.generators()[g].degree == deg) sub.push_back(g);
    if (sub.empty()) continue;
    linalg::Matrix d = linalg::zeros(n, sub.size());
    for (const auto& e : c.boundary_entries())
      for (std::size_t k = 0; k < sub.size(); ++k)
        if (e.from == sub[k]) d[e.to][k] += e.coef;
    const auto cycles = linalg::kernel(d, sub.size());
    if (cycles.empty()) continue;
    morse::Chain a;
    for (const auto& z : cycles) {
      const Rational w = random_rational(rng, 3);
      for (std::size_t k = 0; k < sub.size(); ++k)
        if (z[k] != 0) a[sub[k]] += w * z[k];
    }
    for (auto it = a.begin(); it != a.end();) it = it->second == 0 ? a.erase(it) : std::next(it);
    if (a.empty()) continue;
    // Skip boundaries: they carry no spectral number.
    linalg::Matrix all = linalg::zeros(n, n + 1);
    for (const auto& e : c.boundary_entries()) all[e.to][e.from] += e.coef;
    const auto base = linalg::rank(all);
    for (const auto& [g, coef] : a) all[g][n] = coef;
    if (linalg::rank(all) == base) continue;
    out.push_back(a);
  }
  return out;
}

// Ball volume delta^n / n! and the unit exponent of the lifted loop.
inline Rational oracle_kappa(const Rational& volume, const Rational& delta, const Rational& mu, long ell, int n) {
  Rational ball = 1;
  for (int i = 1; i <= n; ++i) ball *= delta;
  for (int i = 2; i <= n; ++i) ball /= i;
  return -(ball / (volume - ball)) * (mu - Rational(ell) * delta / (n + 1));
}

// Powers of 1 + s e t^delta + r pt t^{2 delta} in the relations e*e = -pt + e t^-delta,
// e*pt = pt*pt = 0, as coordinates (unit, e, pt).
struct T4Power {
  Dense unit, e, pt;
};
inline std::vector<std::optional<Rational>> oracle_t4_power_valuations(const Rational& delta, const Rational& s,
                                                                       const Rational& r, int k_max) {
  const T4Power base{{{Rational(0), Rational(1)}}, {{delta, s}}, {{2 * delta, r}}};
  auto mul = [&](const T4Power& a, const T4Power& b) {
    T4Power out;
    out.unit = dense_mul(a.unit, b.unit);
    out.e = dense_add(dense_mul(a.unit, b.e), dense_mul(a.e, b.unit));
    out.pt = dense_add(dense_mul(a.unit, b.pt), dense_mul(a.pt, b.unit));
    const Dense ee = dense_mul(a.e, b.e);
    Dense minus_ee;
    for (const auto& [x, c] : ee) minus_ee[x] = -c;
    out.pt = dense_add(out.pt, minus_ee);
    Dense shifted;
    for (const auto& [x, c] : ee) shifted[x - delta] = c;
    out.e = dense_add(out.e, shifted);
    return out;
  };
  std::vector<std::optional<Rational>> nus;
  T4Power p = base;
  for (int k = 1; k <= k_max; ++k) {
    std::optional<Rational> nu;
    for (const Dense* part : {&p.unit, &p.e, &p.pt})
      if (const auto v = dense_nu(*part); v && (!nu || *v > *nu)) nu = v;
    nus.push_back(nu);
    p = mul(p, base);
  }
  return nus;
}

inline std::vector<std::string> bundled_manifold_names() { return gallery::manifold_names(); }

}  // namespace qhd::testing
