#include "qhdescent/novikov.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

#include "qhdescent/errors.hpp"

namespace qhd::novikov {

std::strong_ordering compare(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

const Rational& Valuation::value() const {
  if (!value_) fail(ErrorKind::precondition, "valuation of zero has no rational value");
  return *value_;
}

std::string Valuation::str() const { return value_ ? qhd::to_string(*value_) : "bottom"; }

Valuation Valuation::operator+(const Valuation& other) const {
  if (is_bottom() || other.is_bottom()) return bottom();
  return Valuation(*value_ + *other.value_);
}

std::strong_ordering Valuation::operator<=>(const Valuation& other) const {
  if (is_bottom() || other.is_bottom()) {
    if (is_bottom() && other.is_bottom()) return std::strong_ordering::equal;
    return is_bottom() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return compare(*value_, *other.value_);
}

namespace {

std::optional<Rational> max_floor(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b;
  if (!b) return a;
  return cmp(*a, *b) >= 0 ? a : b;
}

}  // namespace

Scalar Scalar::monomial(const Rational& coef, const Rational& exponent) {
  Scalar s;
  if (coef != 0) s.terms_.push_back({exponent, coef});
  return s;
}

Scalar Scalar::from_terms(std::vector<Term> terms, std::optional<Rational> floor) {
  const auto decreasing = [](const Term& a, const Term& b) { return cmp(a.exponent, b.exponent) > 0; };
  if (!std::is_sorted(terms.begin(), terms.end(), decreasing)) std::stable_sort(terms.begin(), terms.end(), decreasing);
  Scalar s;
  s.floor_ = std::move(floor);
  for (auto& term : terms) {
    if (s.floor_ && cmp(term.exponent, *s.floor_) <= 0) break;
    if (!s.terms_.empty() && s.terms_.back().exponent == term.exponent) {
      s.terms_.back().coef += term.coef;
      if (s.terms_.back().coef == 0) s.terms_.pop_back();
    } else if (term.coef != 0) {
      s.terms_.push_back(std::move(term));
    }
  }
  return s;
}

Valuation Scalar::nu() const {
  if (terms_.empty()) return Valuation::bottom();
  return Valuation(terms_.front().exponent);
}

std::optional<Valuation> Scalar::certain_nu() const {
  if (!terms_.empty() || !floor_) return nu();
  return std::nullopt;
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  // Both term lists are sorted by decreasing exponent; merge them in one pass.
  std::vector<Term> merged;
  merged.reserve(a.terms().size() + b.terms().size());
  std::merge(a.terms().begin(), a.terms().end(), b.terms().begin(), b.terms().end(), std::back_inserter(merged),
             [](const Term& x, const Term& y) { return cmp(x.exponent, y.exponent) > 0; });
  return Scalar::from_terms(std::move(merged), max_floor(a.floor(), b.floor()));
}

Scalar& operator+=(Scalar& a, const Scalar& b) {
  a = a + b;
  return a;
}

Scalar operator-(const Scalar& a) { return scale(a, -1); }

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  // Error of a*b is bounded by F_a + nu(b), F_b + nu(a) and F_a + F_b.
  std::optional<Rational> floor;
  auto raise = [&floor](const Rational& candidate) {
    if (!floor || cmp(candidate, *floor) > 0) floor = candidate;
  };
  if (a.floor() && b.has_terms()) raise(*a.floor() + b.terms().front().exponent);
  if (b.floor() && a.has_terms()) raise(*b.floor() + a.terms().front().exponent);
  if (a.floor() && b.floor()) raise(*a.floor() + *b.floor());

  // One sorted run per term of the shorter factor, merged pairwise.
  const auto& shorter = a.terms().size() <= b.terms().size() ? a.terms() : b.terms();
  const auto& longer = a.terms().size() <= b.terms().size() ? b.terms() : a.terms();
  const auto decreasing = [](const Term& x, const Term& y) { return cmp(x.exponent, y.exponent) > 0; };
  std::vector<Term> product, run, merged;
  for (const auto& x : shorter) {
    run.clear();
    for (const auto& y : longer) {
      Rational e = x.exponent + y.exponent;
      if (floor && cmp(e, *floor) <= 0) break;  // exponents only decrease from here
      run.push_back({std::move(e), x.coef * y.coef});
    }
    merged.clear();
    merged.reserve(product.size() + run.size());
    std::merge(std::make_move_iterator(product.begin()), std::make_move_iterator(product.end()),
               std::make_move_iterator(run.begin()), std::make_move_iterator(run.end()), std::back_inserter(merged),
               decreasing);
    product.swap(merged);
  }
  return Scalar::from_terms(std::move(product), std::move(floor));
}

Scalar scale(const Scalar& a, const Rational& c) {
  if (c == 0) return Scalar();
  std::vector<Term> terms = a.terms();
  for (auto& t : terms) t.coef *= c;
  return Scalar::from_terms(std::move(terms), a.floor());
}

Scalar shift(const Scalar& a, const Rational& by) {
  std::vector<Term> terms = a.terms();
  for (auto& t : terms) t.exponent += by;
  std::optional<Rational> floor;
  if (a.floor()) floor = *a.floor() + by;
  return Scalar::from_terms(std::move(terms), std::move(floor));
}

Scalar invert(const Scalar& a, const std::optional<Rational>& target_floor) {
  if (!a.has_terms()) {
    if (a.is_exact()) fail(ErrorKind::not_invertible, "cannot invert the zero scalar");
    fail(ErrorKind::precondition, "cannot invert a scalar with no terms above its floor");
  }
  const Rational lead_exp = a.terms().front().exponent;
  const Rational lead_coef = a.terms().front().coef;
  if (a.is_monomial()) return Scalar::monomial(1 / lead_coef, -lead_exp);

  std::optional<Rational> floor = target_floor;
  if (a.floor()) floor = max_floor(floor, Rational(*a.floor() - 2 * lead_exp));
  if (!floor)
    fail(ErrorKind::precondition,
         "inverting a non-monomial exact scalar needs a target floor (the series is infinite)");

  // a = c t^e (1 + z) with z = sum z_k t^{-g_k}, g_k > 0. The inverse of 1 + z is
  // sum w_x t^{-x} over the monoid generated by the g_k, with w_0 = 1 and
  // w_x = -sum_k z_k w_{x - g_k}; only x < bound lies above the floor.
  const Rational bound = -(*floor + lead_exp);
  std::vector<Term> gaps;
  for (auto it = a.terms().begin() + 1; it != a.terms().end(); ++it)
    gaps.push_back({lead_exp - it->exponent, -(it->coef / lead_coef)});  // (g_k, -z_k)
  std::map<Rational, Rational> w;
  std::set<Rational> pending;
  if (cmp(Rational(0), bound) < 0) pending.insert(Rational(0));
  while (!pending.empty()) {
    const Rational x = *pending.begin();
    pending.erase(pending.begin());
    Rational value = cmp(x, 0) == 0 ? Rational(1) : Rational(0);
    for (const auto& [g, minus_z] : gaps) {
      if (const auto it = w.find(x - g); it != w.end()) value += minus_z * it->second;
      if (Rational next = x + g; cmp(next, bound) < 0) pending.insert(std::move(next));
    }
    w.emplace(x, std::move(value));
  }
  std::vector<Term> inverse_terms;
  inverse_terms.reserve(w.size());
  for (auto& [x, c] : w) inverse_terms.push_back({-x, std::move(c)});
  const Scalar sum = Scalar::from_terms(std::move(inverse_terms), Rational(-bound));
  return shift(scale(sum, 1 / lead_coef), -lead_exp);
}

Scalar truncate(const Scalar& a, const Rational& new_floor) {
  if (a.floor() && cmp(new_floor, *a.floor()) < 0)
    fail(ErrorKind::precondition, "truncate would lower the floor from " + qhd::to_string(*a.floor()) +
                                      " to " + qhd::to_string(new_floor));
  return Scalar::from_terms(a.terms(), new_floor);
}

Scalar truncate_at_least(const Scalar& a, const Rational& new_floor) {
  if (a.floor() && cmp(new_floor, *a.floor()) < 0) return a;
  return Scalar::from_terms(a.terms(), new_floor);
}

bool agree_above(const Scalar& a, const Scalar& b, const Rational& floor) {
  if (a.floor() && cmp(*a.floor(), floor) > 0) return false;
  if (b.floor() && cmp(*b.floor(), floor) > 0) return false;
  return Scalar::from_terms(a.terms(), floor).terms() == Scalar::from_terms(b.terms(), floor).terms();
}

std::string to_string(const Scalar& a) {
  std::string out;
  for (const auto& t : a.terms()) {
    std::string coef = qhd::to_string(t.coef);
    if (!out.empty()) {
      if (coef.front() == '-') {
        out += " - ";
        coef.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    out += coef + "t^" + qhd::to_string(t.exponent);
  }
  if (out.empty()) out = "0";
  if (a.floor()) out += " [floor " + qhd::to_string(*a.floor()) + "]";
  return out;
}

}  // namespace qhd::novikov
