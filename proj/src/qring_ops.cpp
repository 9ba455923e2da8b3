#include <numeric>

#include "qhdescent/errors.hpp"
#include "qhdescent/linalg.hpp"
#include "qhdescent/qring.hpp"

namespace qhd::qring {

namespace {

QElement shift_q(const QElement& a, long by) {
  QElement out;
  for (const auto& [key, s] : a.terms()) out.add(key.first, key.second + by, s);
  return out;
}

long slice_qpow(const Manifold& m, int cls, int degree) { return (degree - m.degree(cls)) / 2; }

// Columns: u * (xi_j q^{(from - deg xi_j)/2}); rows: coordinates in the slice of degree `to`.
std::vector<std::vector<Scalar>> slice_matrix(const QElement& u, const Manifold& m, int from, int to) {
  const int size = m.size();
  std::vector<std::vector<Scalar>> a(size, std::vector<Scalar>(size));
  for (int j = 0; j < size; ++j) {
    const QElement image = quantum_product(u, QElement::basis(j, slice_qpow(m, j, from)), m);
    for (const auto& [key, s] : image.terms()) {
      if (term_degree(m, key) != to)
        fail(ErrorKind::precondition, "multiplication does not preserve the homogeneous slice (inhomogeneous element)");
      a[key.first][j] = s;
    }
  }
  return a;
}

Scalar det(const std::vector<std::vector<Scalar>>& a) { return linalg::determinant(a, Scalar::one()); }

Inverse invert_by_series(const UnitSplit& split, const Manifold& m, const Rational& floor) {
  const Scalar lambda_inv = novikov::invert(split.lambda, floor);
  const Rational rel_floor = floor + split.lambda.nu().value();
  const QElement minus_z = scale(shift_q(split.rest, -split.lambda_qpow), -lambda_inv);

  // Energy gap: nu(z^{(n+1)k}) <= -k delta, so the series leaves the window in bounded steps.
  long bound = 0;
  if (const auto delta = minimal_energy(m)) {
    Rational steps = (-rel_floor) / *delta;
    mpz_class whole = steps.get_num() / steps.get_den();
    bound = (m.n() + 1) * (whole.get_si() + 2);
  }
  bound = std::max<long>(bound, m.size() + m.n() + 2);

  QElement sum = QElement::unit(m);
  QElement term = sum;
  for (long i = 1;; ++i) {
    term = truncate_at_least(quantum_product(term, minus_z, m), rel_floor);
    if (term.is_zero()) break;
    if (i > bound) fail(ErrorKind::internal, "geometric series for the inverse failed to terminate");
    sum = sum + term;
  }
  return {shift_q(scale(sum, lambda_inv), -split.lambda_qpow), InverseRoute::geometric_series};
}

Inverse invert_by_linear_solve(const QElement& u, const Manifold& m, const Rational& floor) {
  const auto degree = homogeneous_degree(u, m);
  if (!degree)
    fail(ErrorKind::precondition,
         "u = 1 (x) lambda + y with nu(lambda) < nu(y) and y not nilpotent can only be inverted when homogeneous");
  const int two_n = 2 * m.n();
  const int target = 2 * two_n - *degree;
  const auto a = slice_matrix(u, m, target, two_n);
  const Scalar d = det(a);
  if (d.is_zero()) fail(ErrorKind::not_invertible, "element is not invertible (multiplication has zero determinant)");
  const int size = m.size();
  const int row = m.unit();
  std::vector<Scalar> adj(size);
  novikov::Valuation top = novikov::Valuation::bottom();
  for (int j = 0; j < size; ++j) {
    std::vector<std::vector<Scalar>> minor;
    for (int i = 0; i < size; ++i) {
      if (i == row) continue;
      std::vector<Scalar> r;
      for (int k = 0; k < size; ++k)
        if (k != j) r.push_back(a[i][k]);
      minor.push_back(std::move(r));
    }
    adj[j] = det(minor);
    if ((row + j) % 2) adj[j] = -adj[j];
    top = std::max(top, adj[j].nu());
  }
  const Rational det_floor = top.is_bottom() ? floor : Rational(floor - top.value());
  const Scalar d_inv = novikov::invert(d, det_floor);
  QElement v;
  for (int j = 0; j < size; ++j) v.add(j, slice_qpow(m, j, target), adj[j] * d_inv);
  return {v, InverseRoute::linear_solve};
}

}  // namespace

// Finite geometric series for an exact nilpotent y: q^{-p} sum_k (-y q^{-p})^k lambda^{-(k+1)}.
// Each scalar inverse is taken to floor - nu((-y)^k), so every term is correct above `floor`.
Inverse invert_nilpotent(const UnitSplit& split, const Manifold& m, const Rational& floor) {
  const QElement minus_y = scale(shift_q(split.rest, -split.lambda_qpow), Scalar::monomial(-1, 0));
  QElement sum;
  QElement power = QElement::unit(m);
  Scalar lambda_power = split.lambda;
  while (!power.is_zero()) {
    const Rational target = floor - element_nu(power).value();
    sum = sum + scale(power, novikov::invert(lambda_power, target));
    power = quantum_product(power, minus_y, m);
    lambda_power = lambda_power * split.lambda;
  }
  return {shift_q(sum, -split.lambda_qpow), InverseRoute::geometric_series};
}

Inverse invert_unit(const QElement& u, const Manifold& m, const Rational& floor) {
  if (u.is_zero()) fail(ErrorKind::not_invertible, "zero is not invertible");
  const UnitSplit split = split_unit(u, m);
  if (split.lambda.has_terms()) {
    if (split.rest.is_exact() && nilpotency_test(split.rest, m, floor).nilpotent) return invert_nilpotent(split, m, floor);
    if (element_nu(split.rest) <= split.lambda.nu()) return invert_by_series(split, m, floor);
  }
  return invert_by_linear_solve(u, m, floor);
}

Nilpotency nilpotency_test(const QElement& x, const Manifold& m, const Rational& floor) {
  // Over the fraction field of Lambda[q] the algebra has dimension m.size(), so a
  // nilpotent x satisfies x^{m.size()} = 0.
  Nilpotency out;
  const bool exact = x.is_exact();
  QElement p = exact ? x : truncate_at_least(x, floor);
  for (int k = 1; k <= m.size(); ++k) {
    if (p.is_zero()) {
      if (exact) {
        out.nilpotent = true;
        out.order = k;
      } else {
        out.certainty = Certainty::undetermined;
      }
      return out;
    }
    p = quantum_product(p, x, m);
    if (!exact) p = truncate_at_least(p, floor);
  }
  if (p.is_zero()) {
    if (exact) {
      out.nilpotent = true;
      out.order = m.size() + 1;
    } else {
      out.certainty = Certainty::undetermined;
    }
  }
  return out;
}

bool is_strongly_uniruled(const Manifold& m) {
  for (const auto& e : m.gw())
    if (e.value != 0 && (e.classes[0] == m.point() || e.classes[1] == m.point() || e.classes[2] == m.point()))
      return true;
  return false;
}

IdealCheck qminus_ideal_check(const Manifold& m) {
  const int top = 2 * m.n();
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      if (m.degree(i) == top && m.degree(j) == top) continue;
      for (const auto& t : m.basis_product(i, j))
        if (t.cls == m.unit() && t.coef != 0) return {false, std::pair{i, j}};
    }
  return {};
}

std::optional<long> minimal_chern(const Manifold& m) {
  long g = 0;
  for (long c : m.spec().c1) g = std::gcd(g, c);
  if (g == 0) return std::nullopt;
  return g;
}

std::optional<Rational> minimal_energy(const Manifold& m) {
  std::optional<Rational> best;
  for (const auto& beta : m.curve_classes()) {
    Rational w = m.omega(beta);
    if (!best || cmp(w, *best) < 0) best = w;
  }
  return best;
}

std::vector<std::vector<Scalar>> multiplication_matrix(const QElement& u, const Manifold& m, int degree) {
  const auto d = homogeneous_degree(u, m);
  if (!d) fail(ErrorKind::precondition, "multiplication matrix needs a homogeneous element");
  return slice_matrix(u, m, degree, degree + *d - 2 * m.n());
}

}  // namespace qhd::qring
