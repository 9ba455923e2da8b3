#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "qhdescent/rational.hpp"

// Generalized Laurent series sum r_i t^{e_i} with rational exponents and coefficients.
//
// A scalar stores finitely many terms and an optional floor. With a floor F the
// stored terms are exact for every exponent > F and carry no information at or
// below F. Without a floor the scalar is exact. Every operation propagates floors
// so that this contract survives arithmetic; floors only ever rise.
namespace qhd::novikov {

struct Term {
  Rational exponent;
  Rational coef;
  bool operator==(const Term&) const = default;
};

// Leading exponent, or bottom for zero.
class Valuation {
 public:
  Valuation() = default;  // bottom
  explicit Valuation(Rational value) : value_(std::move(value)) {}
  static Valuation bottom() { return Valuation(); }

  bool is_bottom() const { return !value_.has_value(); }
  const Rational& value() const;
  std::string str() const;

  Valuation operator+(const Valuation& other) const;
  bool operator==(const Valuation& other) const { return value_ == other.value_; }
  std::strong_ordering operator<=>(const Valuation& other) const;

 private:
  std::optional<Rational> value_;
};

std::strong_ordering compare(const Rational& a, const Rational& b);

class Scalar {
 public:
  Scalar() = default;  // exact zero

  static Scalar monomial(const Rational& coef, const Rational& exponent);
  static Scalar one() { return monomial(1, 0); }
  // Sorts, merges equal exponents, drops zero coefficients and terms at or below the floor.
  static Scalar from_terms(std::vector<Term> terms, std::optional<Rational> floor = std::nullopt);

  const std::vector<Term>& terms() const { return terms_; }
  const std::optional<Rational>& floor() const { return floor_; }

  bool is_exact() const { return !floor_.has_value(); }
  bool has_terms() const { return !terms_.empty(); }
  // Exactly zero: no terms and no floor.
  bool is_zero() const { return terms_.empty() && !floor_; }
  bool is_monomial() const { return terms_.size() == 1 && !floor_; }

  // Leading stored exponent; bottom when nothing is stored.
  Valuation nu() const;
  // True valuation when it is determined by the stored data.
  std::optional<Valuation> certain_nu() const;

  bool operator==(const Scalar&) const = default;

 private:
  std::vector<Term> terms_;  // strictly decreasing exponents, nonzero coefficients
  std::optional<Rational> floor_;
};

Scalar operator+(const Scalar& a, const Scalar& b);
Scalar operator-(const Scalar& a);
Scalar operator-(const Scalar& a, const Scalar& b);
Scalar operator*(const Scalar& a, const Scalar& b);
Scalar& operator+=(Scalar& a, const Scalar& b);

Scalar scale(const Scalar& a, const Rational& c);
// Multiplication by t^shift.
Scalar shift(const Scalar& a, const Rational& shift);

// Inverse of a nonzero scalar. An exact monomial inverts exactly. Otherwise the
// geometric series is cut at target_floor (required for exact non-monomials); an
// inexact input with floor F yields floor max(target_floor, F - 2 nu).
Scalar invert(const Scalar& a, const std::optional<Rational>& target_floor = std::nullopt);

// Raises the floor to new_floor, dropping terms at or below it.
Scalar truncate(const Scalar& a, const Rational& new_floor);
// Raises the floor to max(current floor, new_floor).
Scalar truncate_at_least(const Scalar& a, const Rational& new_floor);

// Both scalars carry the same information above `floor`.
bool agree_above(const Scalar& a, const Scalar& b, const Rational& floor);

std::string to_string(const Scalar& a);

}  // namespace qhd::novikov
