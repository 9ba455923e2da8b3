#include "qhdescent/descent.hpp"

#include <algorithm>
#include <tuple>

#include "qhdescent/errors.hpp"
#include "qhdescent/linalg.hpp"

namespace qhd::descent {

using novikov::Scalar;
using novikov::Valuation;

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::descend: return "descend";
    case Outcome::not_descend: return "not_descend";
    case Outcome::undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string to_string(ExactRoute r) {
  switch (r) {
    case ExactRoute::none: return "none";
    case ExactRoute::nilpotent_lower_part: return "nilpotent_lower_part";
    case ExactRoute::newton_polygon: return "newton_polygon";
    case ExactRoute::interval: return "interval";
  }
  return "none";
}

namespace {

// Upper bound for the true valuation: stored leading exponents and floors.
Valuation nu_upper(const QElement& a) {
  Valuation best = qring::element_nu(a);
  if (const auto f = qring::element_floor(a)) best = std::max(best, Valuation(*f));
  return best;
}

std::optional<Valuation> nu_certain(const QElement& a) {
  const Valuation stored = qring::element_nu(a);
  const auto f = qring::element_floor(a);
  if (!f) return stored;
  if (!stored.is_bottom() && cmp(stored.value(), *f) > 0) return stored;
  return std::nullopt;
}

struct Powers {
  std::vector<QElement> values;  // x^1 .. x^k_max
};

// Only the leading part of a power is read, so powers are kept to this depth
// below their leading exponent; the floors keep nu_upper an upper bound.
const Rational kPowerWindow(4);

QElement windowed(const QElement& x) {
  const Valuation top = qring::element_nu(x);
  if (top.is_bottom()) return x;
  return qring::truncate_at_least(x, top.value() - kPowerWindow);
}

Powers powers(const QElement& u, const Manifold& m, int k_max) {
  Powers p;
  const QElement base = windowed(u);
  QElement x = base;
  for (int k = 1; k <= k_max; ++k) {
    p.values.push_back(x);
    if (k < k_max) x = windowed(qring::quantum_product(x, base, m));
  }
  return p;
}

}  // namespace

std::optional<Rational> spectral_radius_valuation(const QElement& u, const Manifold& m) {
  if (!u.is_exact() || qring::homogeneous_degree(u, m) != 2 * m.n()) return std::nullopt;
  const auto matrix = qring::multiplication_matrix(u, m, 2 * m.n());
  const auto poly = linalg::characteristic_polynomial(matrix, Scalar::one());
  const int d = static_cast<int>(poly.size()) - 1;
  std::optional<Rational> best;
  for (int j = 1; j <= d; ++j) {
    const Scalar& c = poly[d - j];
    if (!c.has_terms()) continue;
    const Rational slope = c.nu().value() / j;
    if (!best || cmp(slope, *best) > 0) best = slope;
  }
  return best;
}

AsymptoticEstimate asymptotic_valuation(const QElement& u, const Manifold& m, int k_max, const Rational& floor,
                                        const QElement* inverse) {
  if (k_max < 1) fail(ErrorKind::precondition, "k_max must be at least 1");
  if (u.is_zero()) fail(ErrorKind::not_invertible, "asymptotic valuation of zero");
  AsymptoticEstimate est;
  est.k_max = k_max;

  const Powers up = powers(u, m, k_max);
  for (int k = 1; k <= k_max; ++k) {
    const Valuation f = nu_upper(up.values[k - 1]);
    est.powers.push_back(f);
    if (f.is_bottom()) fail(ErrorKind::not_invertible, "a power of the element vanishes");
    const Rational ratio = f.value() / k;
    if (k == 1 || cmp(ratio, est.upper) < 0) est.upper = ratio;
  }

  try {
    const QElement inv = inverse ? *inverse : qring::invert_unit(u, m, floor).value;
    const Powers down = powers(inv, m, k_max);
    for (int k = 1; k <= k_max; ++k) {
      const Valuation g = nu_upper(down.values[k - 1]);
      est.inverse_powers.push_back(g);
      if (g.is_bottom()) fail(ErrorKind::internal, "a power of the inverse vanishes");
      const Rational ratio = -g.value() / k;
      if (!est.lower || cmp(ratio, *est.lower) > 0) est.lower = ratio;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::internal) throw;
    est.notes.push_back(std::string("lower bound omitted: ") + e.what());
  }

  auto settle = [&](const Rational& value, ExactRoute route) {
    if (est.exact && *est.exact != value)
      fail(ErrorKind::internal, "asymptotic routes disagree: " + qhd::to_string(*est.exact) + " vs " + qhd::to_string(value));
    if (!est.exact) {
      est.exact = value;
      est.route = route;
    }
  };

  const qring::UnitSplit split = qring::split_unit(u, m);
  if (split.lambda.has_terms() && split.lambda.is_exact() && split.rest.is_exact()) {
    const auto nil = qring::nilpotency_test(split.rest, m, floor);
    if (nil.nilpotent && nil.certainty == qring::Certainty::certified)
      settle(split.lambda.nu().value(), ExactRoute::nilpotent_lower_part);
  }
  if (const auto rho = spectral_radius_valuation(u, m)) settle(*rho, ExactRoute::newton_polygon);
  if (est.lower && *est.lower == est.upper) settle(est.upper, ExactRoute::interval);

  if (est.lower && cmp(*est.lower, est.upper) > 0)
    fail(ErrorKind::internal, "asymptotic bounds crossed (lower > upper)");
  if (est.exact) {
    if (cmp(*est.exact, est.upper) > 0 || (est.lower && cmp(*est.exact, *est.lower) < 0))
      fail(ErrorKind::internal, "certified asymptotic value lies outside its bounds");
  }
  return est;
}

SpectralResult spectral_descent(const std::vector<SeidelElement>& elements, const Manifold& m, int k_max,
                                const Rational& floor) {
  SpectralResult out;
  out.outcome = Outcome::descend;
  bool unresolved = false;
  for (const auto& s : elements) {
    const qring::UnitSplit split = qring::split_unit(s.element, m);
    const bool lambda_ok = split.lambda.has_terms() && split.lambda.nu() == Valuation(Rational(0));
    const bool rest_ok = qring::element_nu(split.rest) <= Valuation(Rational(0));
    if (lambda_ok && rest_ok) continue;

    // The criterion fails; look for a loop in the generated group with nu(S) != 0.
    std::optional<std::string> reason;
    auto check = [&](const QElement& x, const std::string& what) {
      if (reason) return;
      const auto v = nu_certain(x);
      if (v && *v != Valuation(Rational(0))) reason = "nu(" + what + ") = " + v->str() + " != 0";
    };
    check(s.element, "S");
    if (!reason) {
      const Powers up = powers(s.element, m, k_max);
      for (int k = 2; k <= k_max && !reason; ++k) check(up.values[k - 1], "S^" + std::to_string(k));
    }
    if (!reason) {
      try {
        const QElement inv = qring::invert_unit(s.element, m, floor).value;
        const Powers down = powers(inv, m, k_max);
        for (int k = 1; k <= k_max && !reason; ++k) check(down.values[k - 1], "S^-" + std::to_string(k));
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::internal) throw;
      }
    }
    if (reason) {
      out.outcome = Outcome::not_descend;
      std::string why = !split.lambda.has_terms() ? "no unit component"
                        : !lambda_ok               ? "nu(lambda) = " + split.lambda.nu().str() + " != 0"
                                                   : "nu(x) = " + qring::element_nu(split.rest).str() + " > 0";
      out.witnesses.push_back({s.label, why + "; " + *reason});
    } else {
      unresolved = true;
      out.witnesses.push_back({s.label, "criterion fails but no loop with nu(S) != 0 was found up to k_max"});
    }
  }
  if (out.outcome != Outcome::not_descend && unresolved) out.outcome = Outcome::undetermined;
  return out;
}

AsymptoticResult asymptotic_descent(const std::vector<SeidelElement>& elements, const Manifold& m, int k_max,
                                    const Rational& floor) {
  AsymptoticResult out;
  bool unresolved = false;
  for (const auto& s : elements) {
    // Each loop is paired with its inverse when one is available.
    std::vector<std::tuple<std::string, QElement, std::optional<QElement>>> loops;
    try {
      QElement inv = qring::invert_unit(s.element, m, floor).value;
      loops.emplace_back(s.label, s.element, inv);
      loops.emplace_back(s.label + "^-1", std::move(inv), s.element);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::internal) throw;
      loops.emplace_back(s.label, s.element, std::nullopt);
    }
    for (const auto& [label, x, inv] : loops) {
      const AsymptoticEstimate est = asymptotic_valuation(x, m, k_max, floor, inv ? &*inv : nullptr);
      out.estimates.emplace(label, est);
      const auto nu = nu_certain(x);
      std::optional<std::string> reason;
      if (nu && *nu < Valuation(Rational(0))) reason = "nu(S) = " + nu->str() + " < 0";
      else if (est.exact && *est.exact != 0) reason = "lim nu(S^k)/k = " + qhd::to_string(*est.exact) + " != 0";
      else if (cmp(est.upper, 0) < 0) reason = "lim nu(S^k)/k <= " + qhd::to_string(est.upper) + " < 0";
      else if (est.lower && cmp(*est.lower, 0) > 0) reason = "lim nu(S^k)/k >= " + qhd::to_string(*est.lower) + " > 0";
      if (reason) {
        out.outcome = Outcome::not_descend;
        out.witnesses.push_back({label, *reason});
      } else if (!nu || !est.exact) {
        unresolved = true;
        out.witnesses.push_back({label, "bounds [" + (est.lower ? qhd::to_string(*est.lower) : std::string("?")) + ", " +
                                            qhd::to_string(est.upper) + "] do not decide the limit"});
      }
    }
  }
  if (out.outcome != Outcome::not_descend && unresolved) out.outcome = Outcome::undetermined;
  return out;
}

DescentVerdict decide(const std::vector<SeidelElement>& elements, const Manifold& m, int k_max, const Rational& floor,
                      AsymptoticResult* details) {
  DescentVerdict v;
  const SpectralResult spectral = spectral_descent(elements, m, k_max, floor);
  AsymptoticResult asymptotic = asymptotic_descent(elements, m, k_max, floor);
  v.spectral = spectral.outcome;
  v.asymptotic = asymptotic.outcome;
  for (const auto& w : spectral.witnesses) v.witnesses.push_back({w.label, "spectral: " + w.reason});
  for (const auto& w : asymptotic.witnesses) v.witnesses.push_back({w.label, "asymptotic: " + w.reason});
  if (v.spectral == Outcome::descend) {
    if (v.asymptotic == Outcome::not_descend)
      fail(ErrorKind::internal, "spectral descent holds but the asymptotic computation found a counterexample");
    if (v.asymptotic == Outcome::undetermined) {
      v.asymptotic = Outcome::descend;
      v.notes.push_back("asymptotic descent follows from spectral descent");
    }
  }
  if (details) *details = std::move(asymptotic);
  return v;
}

std::vector<GrowthRow> ostrover_growth(const std::map<std::string, Rational>& morse_values, const Rational& slope_I,
                                       const std::vector<Rational>& s_grid) {
  if (slope_I == 0) fail(ErrorKind::precondition, "Ostrover growth needs a nonzero slope I");
  std::vector<GrowthRow> rows;
  for (const auto& [cls, value] : morse_values)
    for (const auto& s : s_grid) rows.push_back({s, cls, value + s * slope_I});
  return rows;
}

DiameterCertificate diameter_certificate(const DescentVerdict& verdict, const std::vector<GrowthRow>& growth) {
  DiameterCertificate c;
  if (verdict.spectral != Outcome::descend && verdict.asymptotic != Outcome::descend) {
    c.reason = "no spectral invariant is known to descend (spectral: " + to_string(verdict.spectral) +
               ", asymptotic: " + to_string(verdict.asymptotic) + ")";
    return c;
  }
  std::optional<Rational> slope;
  for (std::size_t i = 0; i < growth.size(); ++i)
    for (std::size_t j = i + 1; j < growth.size(); ++j) {
      if (growth[i].cls != growth[j].cls || growth[i].s == growth[j].s) continue;
      const Rational r = (growth[j].value - growth[i].value) / (growth[j].s - growth[i].s);
      if (slope && *slope != r) {
        c.reason = "growth table is not linear in s";
        return c;
      }
      slope = r;
    }
  if (!slope || *slope == 0) {
    c.reason = "growth table has no nonzero slope";
    return c;
  }
  c.issued = true;
  c.slope = *slope;
  const std::string invariant = verdict.spectral == Outcome::descend ? "c(e, psi_s)" : "cbar(e, psi_s)";
  c.chain = {"||psi_s|| >= " + invariant + " (descended invariant is Hofer-Lipschitz on Ham)",
             invariant + " >= " + qhd::to_string(*slope) + "s - ||phi_1^H|| (triangle inequality with the fixed path)",
             "the right side is unbounded in s, so Ham has infinite Hofer diameter"};
  c.lower_bound = qhd::to_string(*slope) + "s - const";
  return c;
}

}  // namespace qhd::descent
