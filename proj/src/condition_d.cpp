#include "qhdescent/errors.hpp"
#include "qhdescent/linalg.hpp"
#include "qhdescent/qring.hpp"

namespace qhd::qring {

namespace {

linalg::Vector dense(const ClassVector& v, int size) {
  linalg::Vector out(size);
  for (const auto& [k, c] : v) out[k] = c;
  return out;
}

ClassVector sparse(const linalg::Vector& v) {
  ClassVector out;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) out[static_cast<int>(k)] = v[k];
  return out;
}

bool extends_span(linalg::Matrix& rows, const linalg::Vector& v) {
  const std::size_t before = linalg::rank(rows);
  rows.push_back(v);
  if (linalg::rank(rows) > before) return true;
  rows.pop_back();
  return false;
}

std::string describe(const ClassVector& v, const Manifold& m) {
  std::string out;
  for (const auto& [k, c] : v) {
    if (!out.empty()) out += " + ";
    out += (c == 1 ? std::string() : qhd::to_string(c) + "*") + m.class_name(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace

ConditionD condition_d_check(const Manifold& m, const std::optional<std::vector<ClassVector>>& candidate) {
  const int size = m.size();
  ConditionD out;

  // Divisor subring: closure of {1} under multiplication by degree 2n-2 classes.
  std::vector<ClassVector> divisors;
  for (int i = 0; i < size; ++i)
    if (m.degree(i) == 2 * m.n() - 2) divisors.push_back({{i, Rational(1)}});
  linalg::Matrix span;
  std::vector<ClassVector> queue{{{m.unit(), Rational(1)}}};
  for (const auto& d : divisors) queue.push_back(d);
  for (std::size_t next = 0; next < queue.size(); ++next) {
    const ClassVector v = queue[next];
    if (v.empty() || !extends_span(span, dense(v, size))) continue;
    out.divisor_ring.push_back(v);
    for (const auto& d : divisors) queue.push_back(m.classical(d, v));
  }

  if (candidate) {
    out.candidate_is_canonical = false;
    out.complement = *candidate;
  } else {
    linalg::Matrix constraints;
    for (const auto& d : out.divisor_ring) {
      linalg::Vector row(size);
      for (int j = 0; j < size; ++j) row[j] = m.pairing(d, ClassVector{{j, Rational(1)}});
      constraints.push_back(std::move(row));
    }
    for (const auto& v : linalg::kernel(constraints, size)) out.complement.push_back(sparse(v));
  }

  linalg::Matrix all = span;
  for (const auto& v : out.complement) all.push_back(dense(v, size));
  const bool complement_ok = out.divisor_ring.size() + out.complement.size() == static_cast<std::size_t>(size) &&
                             linalg::rank(all) == static_cast<std::size_t>(size);
  if (!complement_ok) {
    if (!out.candidate_is_canonical) fail(ErrorKind::precondition, "V is not an additive complement of the divisor subring D");
    out.violations.push_back("the pairing-orthogonal complement of D is not a complement (pairing degenerate on D)");
    return out;
  }

  for (const auto& d : out.divisor_ring)
    for (const auto& v : out.complement) {
      const ClassVector prod = m.classical(d, v);
      if (!prod.empty())
        out.violations.push_back("(a) " + describe(d, m) + " . " + describe(v, m) + " = " + describe(prod, m) + " != 0");
    }

  for (const auto& beta : m.curve_classes())
    for (const auto& d : out.divisor_ring)
      for (const auto& v : out.complement) {
        const auto value = m.two_point(beta, d, v);
        if (!value)
          out.violations.push_back("(b) no divisor detects a curve class, two-point invariant undetermined");
        else if (*value != 0)
          out.violations.push_back("(b) <" + describe(d, m) + ", " + describe(v, m) + "> = " + qhd::to_string(*value) +
                                   " in a nonzero curve class");
      }

  out.satisfied = out.violations.empty();
  return out;
}

}  // namespace qhd::qring
