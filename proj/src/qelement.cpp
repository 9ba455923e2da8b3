#include <map>
#include <tuple>

#include "qhdescent/errors.hpp"
#include "qhdescent/qring.hpp"

namespace qhd::qring {

QElement QElement::basis(int cls, long qpow, const Scalar& coef) {
  QElement e;
  e.add(cls, qpow, coef);
  return e;
}

void QElement::add(int cls, long qpow, const Scalar& coef) {
  if (coef.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({cls, qpow}, coef);
  if (inserted) return;
  it->second = it->second + coef;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar QElement::coefficient(int cls, long qpow) const {
  auto it = terms_.find({cls, qpow});
  return it == terms_.end() ? Scalar() : it->second;
}

bool QElement::is_zero() const {
  for (const auto& [key, s] : terms_)
    if (s.has_terms()) return false;
  return true;
}

bool QElement::is_exact() const {
  for (const auto& [key, s] : terms_)
    if (!s.is_exact()) return false;
  return true;
}

QElement operator+(const QElement& a, const QElement& b) {
  QElement out = a;
  for (const auto& [key, s] : b.terms()) out.add(key.first, key.second, s);
  return out;
}

QElement operator-(const QElement& a) { return scale(a, Rational(-1)); }

QElement operator-(const QElement& a, const QElement& b) { return a + (-b); }

QElement scale(const QElement& a, const Scalar& c) {
  QElement out;
  for (const auto& [key, s] : a.terms()) out.add(key.first, key.second, s * c);
  return out;
}

QElement scale(const QElement& a, const Rational& c) {
  QElement out;
  for (const auto& [key, s] : a.terms()) out.add(key.first, key.second, novikov::scale(s, c));
  return out;
}

QElement truncate_at_least(const QElement& a, const Rational& floor) {
  QElement out;
  for (const auto& [key, s] : a.terms()) out.add(key.first, key.second, novikov::truncate_at_least(s, floor));
  return out;
}

bool agree_above(const QElement& a, const QElement& b, const Rational& floor) {
  std::map<QElement::Key, int> keys;
  for (const auto& [key, s] : a.terms()) keys[key] = 0;
  for (const auto& [key, s] : b.terms()) keys[key] = 0;
  for (const auto& [key, unused] : keys)
    if (!novikov::agree_above(a.coefficient(key.first, key.second), b.coefficient(key.first, key.second), floor))
      return false;
  return true;
}

std::optional<Rational> element_floor(const QElement& a) {
  std::optional<Rational> floor;
  for (const auto& [key, s] : a.terms())
    if (s.floor() && (!floor || cmp(*s.floor(), *floor) > 0)) floor = s.floor();
  return floor;
}

int term_degree(const Manifold& m, const QElement::Key& key) {
  return m.degree(key.first) + 2 * static_cast<int>(key.second);
}

std::optional<int> homogeneous_degree(const QElement& a, const Manifold& m) {
  std::optional<int> deg;
  for (const auto& [key, s] : a.terms()) {
    const int d = term_degree(m, key);
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  return deg;
}

QElement quantum_product(const QElement& a, const QElement& b, const Manifold& m) {
  // Accumulate per (class, q-power) before building scalars to keep merges cheap.
  std::map<QElement::Key, Scalar> acc;
  for (const auto& [ka, sa] : a.terms()) {
    for (const auto& [kb, sb] : b.terms()) {
      const Scalar ab = sa * sb;
      if (ab.is_zero()) continue;
      for (const auto& pt : m.basis_product(ka.first, kb.first)) {
        Scalar term = novikov::shift(novikov::scale(ab, pt.coef), pt.exponent);
        auto [it, inserted] = acc.try_emplace({pt.cls, ka.second + kb.second + pt.qpow}, term);
        if (!inserted) it->second = it->second + term;
      }
    }
  }
  QElement out;
  for (const auto& [key, s] : acc) out.add(key.first, key.second, s);
  return out;
}

QElement classical_product(const QElement& a, const QElement& b, const Manifold& m) {
  QElement out;
  for (const auto& [ka, sa] : a.terms())
    for (const auto& [kb, sb] : b.terms()) {
      const Scalar ab = sa * sb;
      for (const auto& [k, c] : m.classical(ka.first, kb.first))
        out.add(k, ka.second + kb.second, novikov::scale(ab, c));
    }
  return out;
}

QElement power(const QElement& a, int k, const Manifold& m) {
  if (k < 0) fail(ErrorKind::precondition, "negative power of a quantum class");
  QElement result = QElement::unit(m);
  QElement base = a;
  while (k > 0) {
    if (k & 1) result = quantum_product(result, base, m);
    k >>= 1;
    if (k) base = quantum_product(base, base, m);
  }
  return result;
}

Valuation element_nu(const QElement& a) {
  Valuation best = Valuation::bottom();
  for (const auto& [key, s] : a.terms()) best = std::max(best, s.nu());
  return best;
}

UnitSplit split_unit(const QElement& u, const Manifold& m) {
  UnitSplit split;
  bool found = false;
  for (const auto& [key, s] : u.terms()) {
    if (key.first != m.unit()) {
      split.rest.add(key.first, key.second, s);
      continue;
    }
    if (found)
      fail(ErrorKind::precondition, "the unit component spans several q-powers; it is not invertible in Lambda");
    found = true;
    split.lambda = s;
    split.lambda_qpow = key.second;
  }
  return split;
}

std::string to_string(const QElement& a, const Manifold& m) {
  if (a.terms().empty()) return "0";
  std::string out;
  for (const auto& [key, s] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += m.class_name(key.first);
    if (key.second != 0) out += " q^" + std::to_string(key.second);
    out += " (" + novikov::to_string(s) + ")";
  }
  return out;
}

}  // namespace qhd::qring
