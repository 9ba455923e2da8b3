#include "qhdescent/seidel.hpp"

#include "qhdescent/errors.hpp"
#include "qhdescent/gallery.hpp"
#include "qhdescent/linalg.hpp"

namespace qhd::seidel {

using novikov::Scalar;

SeidelElement make_element(const QElement& element, const Manifold& m, std::string label) {
  const auto degree = qring::homogeneous_degree(element, m);
  if (!degree) fail(ErrorKind::precondition, "Seidel element \"" + label + "\" is zero or not homogeneous");
  if (*degree != 2 * m.n())
    fail(ErrorKind::precondition, "Seidel element \"" + label + "\" has degree " + std::to_string(*degree) +
                                      ", expected 2n = " + std::to_string(2 * m.n()));
  if (element.is_exact()) {
    const auto matrix = qring::multiplication_matrix(element, m, 2 * m.n());
    if (linalg::determinant(matrix, Scalar::one()).is_zero())
      fail(ErrorKind::not_invertible, "Seidel element \"" + label + "\" is not invertible");
  }
  return {element, std::move(label)};
}

long section_c1vert(const SectionTable& t, const Manifold& m, const Lattice& beta) {
  return t.sigma0_c1vert + m.c1(beta);
}

Rational section_u(const SectionTable& t, const Manifold& m, const Lattice& beta) {
  return t.sigma0_u + m.omega(beta);
}

bool dimension_filter(long c1vert, int degree) { return 2 * c1vert + degree == 0; }

SeidelElement seidel_from_table(const SectionTable& t, const Manifold& m, std::string label) {
  if (t.entries.empty()) fail(ErrorKind::precondition, "section table is empty");
  QElement s;
  for (const auto& e : t.entries) {
    if (e.beta.size() != static_cast<std::size_t>(m.spec().h2_rank))
      fail(ErrorKind::schema, "section entry has the wrong lattice rank");
    if (e.cls < 0 || e.cls >= m.size()) fail(ErrorKind::schema, "section entry class index out of range");
    const long c1vert = section_c1vert(t, m, e.beta);
    if (!dimension_filter(c1vert, m.degree(e.cls)))
      fail(ErrorKind::schema, "section entry <" + m.class_name(e.cls) +
                                  "> violates the dimension constraint 2 c1vert(sigma) + deg xi = 0");
    const Rational exponent = -section_u(t, m, e.beta);
    for (const auto& [k, d] : m.dual(e.cls)) s.add(k, -c1vert, Scalar::monomial(e.value * d, exponent));
  }
  if (s.is_zero()) fail(ErrorKind::not_invertible, "section table sums to zero");
  return make_element(s, m, std::move(label));
}

SeidelElement compose(const SeidelElement& a, const SeidelElement& b, const Manifold& m) {
  const int top = 2 * m.n();
  if (qring::homogeneous_degree(a.element, m) != top || qring::homogeneous_degree(b.element, m) != top)
    fail(ErrorKind::precondition, "compose needs two elements of degree 2n");
  return {qring::quantum_product(a.element, b.element, m), a.label + "*" + b.label};
}

std::string to_string(Monotonicity mono) {
  switch (mono) {
    case Monotonicity::spherically_monotone: return "spherically_monotone";
    case Monotonicity::negatively_monotone: return "negatively_monotone";
    case Monotonicity::omega_zero: return "omega_zero";
    case Monotonicity::none: return "none";
  }
  return "none";
}

SeidelContext context_for(const Manifold& m) {
  SeidelContext ctx;
  ctx.n = m.n();
  ctx.minimal_chern = qring::minimal_chern(m);
  ctx.strongly_uniruled = qring::is_strongly_uniruled(m);
  ctx.h2_rank = m.spec().h2_rank;
  const auto& omega = m.spec().omega;
  const auto& c1 = m.spec().c1;
  bool omega_zero = true;
  for (const auto& w : omega) omega_zero = omega_zero && w == 0;
  if (omega_zero) {
    ctx.monotonicity = Monotonicity::omega_zero;
    return ctx;
  }
  // c1 = k * omega on the lattice for a single rational k.
  std::optional<Rational> k;
  bool proportional = true;
  for (std::size_t g = 0; g < omega.size() && proportional; ++g) {
    if (omega[g] == 0) {
      proportional = c1[g] == 0;
      continue;
    }
    const Rational ratio = Rational(c1[g]) / omega[g];
    if (k && *k != ratio) proportional = false;
    k = ratio;
  }
  if (proportional && k && cmp(*k, 0) > 0) ctx.monotonicity = Monotonicity::spherically_monotone;
  if (proportional && k && cmp(*k, 0) < 0) ctx.monotonicity = Monotonicity::negatively_monotone;
  return ctx;
}

Classification classify_form(const SeidelElement& s, const SeidelContext& ctx, const Manifold* m) {
  Classification out;
  // Without a manifold the unit and point are recognized by their q-powers: in
  // degree 2n the unit sits at q^0 and the point at q^n.
  auto is_unit = [&](const QElement::Key& key) {
    return m ? key.first == m->unit() : key.second == 0;
  };
  auto is_point = [&](const QElement::Key& key) { return m ? key.first == m->point() : key.second == ctx.n; };

  if (m) {
    if (qring::homogeneous_degree(s.element, *m) != 2 * m->n()) {
      out.conforms = false;
      out.violations.push_back("element is not homogeneous of degree 2n");
      return out;
    }
  }

  auto add_case = [&](std::string name, std::string shape, bool ok, std::string detail) {
    if (!ok) {
      out.conforms = false;
      out.violations.push_back("case (" + name + "): expected " + shape + (detail.empty() ? "" : "; " + detail));
    }
    out.cases.push_back({std::move(name), std::move(shape), ok, std::move(detail)});
  };

  auto unit_component_only = [&](const QElement& e) {
    for (const auto& [key, c] : e.terms())
      if (!is_unit(key) && c.has_terms()) return false;
    return true;
  };

  const auto N = ctx.minimal_chern;
  const int n = ctx.n;

  if (ctx.monotonicity == Monotonicity::omega_zero) {
    std::optional<Rational> exponent;
    bool single = true;
    bool has_unit = false;
    for (const auto& [key, c] : s.element.terms()) {
      if (!c.is_monomial()) {
        single = false;
        continue;
      }
      const Rational& e = c.terms().front().exponent;
      if (exponent && *exponent != e) single = false;
      exponent = e;
      has_unit = has_unit || is_unit(key);
    }
    add_case("v", "(1 + x) (x) r0 t^e0 with a single t-exponent", single && has_unit,
             single ? (has_unit ? "" : "unit component missing") : "several t-exponents present");
  }

  if (!N || *N >= 2L * n + 1) {
    add_case("i", "1 (x) lambda", unit_component_only(s.element), "");
  } else if (*N >= n + 1) {
    if (!ctx.strongly_uniruled) {
      add_case("ii", "1 (x) lambda", unit_component_only(s.element), "");
    } else if (m) {
      const QElement p = qring::power(s.element, static_cast<int>(*N), *m);
      add_case("ii", "S^N = 1 (x) lambda", unit_component_only(p), "checked on the N-th power");
    }
  } else if (*N == n && !ctx.strongly_uniruled) {
    bool ok = true;
    for (const auto& [key, c] : s.element.terms())
      if (c.has_terms() && !is_unit(key) && !is_point(key)) ok = false;
    add_case("iii", "1 (x) lambda + pt (x) q^n mu", ok, "");
  }

  if (ctx.monotonicity == Monotonicity::negatively_monotone) {
    Scalar lambda;
    for (const auto& [key, c] : s.element.terms())
      if (is_unit(key)) lambda = lambda + c;
    bool ok = lambda.has_terms();
    std::string detail;
    if (ok) {
      const Rational e0 = lambda.terms().front().exponent;
      for (const auto& [key, c] : s.element.terms()) {
        for (std::size_t i = 0; i < c.terms().size(); ++i) {
          if (is_unit(key) && i == 0) continue;
          if (cmp(c.terms()[i].exponent, e0) >= 0) ok = false;
        }
      }
      if (!ok) detail = "a lower term reaches the leading unit exponent " + qhd::to_string(e0);
    } else {
      detail = "unit component missing";
    }
    add_case("iv", "1 (x) r0 t^e0 + x with nu(x) < e0", ok, detail);
  }
  return out;
}

int level_of(long c1vert, long N, int n) {
  if (N <= n) fail(ErrorKind::precondition, "levels need N > n");
  long d = (-c1vert) % N;
  if (d < 0) d += N;
  if (d > n)
    fail(ErrorKind::precondition, "c1vert = " + std::to_string(c1vert) + " has no level in [0, n] modulo N");
  return static_cast<int>(d);
}

int power_level(int d, long k, long N, int n) {
  if (N <= n) fail(ErrorKind::precondition, "levels need N > n");
  if (d < 0 || d > n) fail(ErrorKind::precondition, "level must lie in [0, n]");
  if (k < 1) fail(ErrorKind::precondition, "power must be positive");
  const long r = (k % N) * d % N;
  if (r > n)
    fail(ErrorKind::precondition, std::to_string(k) + " * " + std::to_string(d) + " has no representative in [0, n] modulo " +
                                      std::to_string(N));
  return static_cast<int>(r);
}

Rational blowup_kappa(const Rational& volume, const Rational& delta, const Rational& mu, long ell, int n) {
  if (n < 1) fail(ErrorKind::precondition, "n must be positive");
  if (cmp(delta, 0) <= 0) fail(ErrorKind::precondition, "blow-up size delta must be positive");
  Rational ball = 1;
  for (int i = 1; i <= n; ++i) ball = ball * delta / i;
  if (cmp(ball, volume) >= 0) fail(ErrorKind::precondition, "blow-up too large: delta^n/n! >= V");
  return -(ball / (volume - ball)) * (mu - Rational(ell) * delta / (n + 1));
}

BlowupLoop blowup_cp2_line(const BlowupParams& p) {
  Manifold m(gallery::blowup_cp2_spec(p.delta));
  const Rational kappa = blowup_kappa(Rational(1, 2), p.delta, 1, 3, 2);
  const int L = m.index_of("L"), E = m.index_of("E"), pt = m.point();
  QElement s = QElement::unit(m);
  s = qring::scale(s, Scalar::monomial(1, kappa));
  s.add(L, 1, Scalar::monomial(1, kappa + p.delta));
  s.add(E, 1, Scalar::monomial(-1, kappa + p.delta));
  QElement inv;
  inv.add(E, 1, Scalar::monomial(-1, 1 - 2 * p.delta - kappa));
  inv.add(pt, 2, Scalar::monomial(1, 1 - p.delta - kappa));
  auto element = make_element(s, m, "gamma_alpha");
  auto inverse = make_element(inv, m, "gamma_-alpha");
  return {std::move(m), std::move(element), std::move(inverse), kappa};
}

BlowupLoop blowup_t4_zero(const BlowupParams& p) {
  if (p.s == -1) fail(ErrorKind::precondition, "t4_zero with s = -1 is not invertible");
  Rational ball = p.delta * p.delta / 2;
  if (cmp(ball, p.volume) >= 0) fail(ErrorKind::precondition, "blow-up too large: delta^2/2 >= V");
  Manifold m(gallery::blowup_t4_spec(p.delta));
  const int E = m.index_of("E"), pt = m.point();
  QElement s = QElement::unit(m);
  s.add(E, 1, Scalar::monomial(p.s, p.delta));
  s.add(pt, 2, Scalar::monomial(p.r, 2 * p.delta));
  // With w = E q t^delta and w*w = w - pt q^2 t^{2 delta}, the inverse stays in span{1, w, pt}.
  const Rational a = -p.s / (1 + p.s);
  const Rational b = p.s * a - p.r;
  QElement inv = QElement::unit(m);
  inv.add(E, 1, Scalar::monomial(a, p.delta));
  inv.add(pt, 2, Scalar::monomial(b, 2 * p.delta));
  auto element = make_element(s, m, "gamma_X");
  auto inverse = make_element(inv, m, "gamma_X^-1");
  return {std::move(m), std::move(element), std::move(inverse), Rational(0)};
}

SeidelElement blowup_general_graph(const Manifold& m, const Rational& volume, const Rational& delta, const Rational& mu,
                                   long ell, const QElement& lower_terms, std::string label) {
  const Rational kappa = blowup_kappa(volume, delta, mu, ell, m.n());
  for (const auto& [key, c] : lower_terms.terms())
    if (key.first == m.unit()) fail(ErrorKind::precondition, "general_graph lower terms must not include the unit class");
  QElement s = lower_terms;
  s.add(m.unit(), 0, Scalar::monomial(1, kappa));
  return make_element(s, m, std::move(label));
}

}  // namespace qhd::seidel
