#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qhdescent/novikov.hpp"
#include "qhdescent/rational.hpp"

// Even-degree quantum homology QH_ev(M) = H_ev(M) (x) Lambda[q, q^-1] built from a
// finite three-point Gromov-Witten table.
namespace qhd::qring {

using novikov::Scalar;
using novikov::Valuation;

// Sparse rational vector over basis indices; no zero entries.
using ClassVector = std::map<int, Rational>;
using Lattice = std::vector<long>;

void add_to(ClassVector& target, const ClassVector& v, const Rational& c = 1);

struct BasisClass {
  std::string name;
  int degree = 0;
};

struct ClassicalEntry {
  int i = 0;
  int j = 0;
  ClassVector result;
};

struct GwEntry {
  Lattice beta;
  std::array<int, 3> classes{};
  Rational value;
};

// Raw manifold description as read from JSON or built by the gallery.
struct ManifoldSpec {
  std::string name;
  int n = 0;
  std::vector<BasisClass> basis;
  std::vector<ClassicalEntry> classical;
  int h2_rank = 0;
  std::vector<Rational> omega;
  std::vector<long> c1;
  std::vector<GwEntry> gw;
  // Homology class of each lattice generator; defaults to the degree-2 basis classes.
  std::vector<ClassVector> h2_classes;
};

// One summand of a basis product: coef * xi_cls (x) q^qpow t^exponent.
struct ProductTerm {
  int cls;
  long qpow;
  Rational exponent;
  Rational coef;
};

class Manifold {
 public:
  // Validates every data invariant; throws Error(schema) naming the broken one.
  explicit Manifold(ManifoldSpec spec);

  const ManifoldSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  int n() const { return spec_.n; }
  int size() const { return static_cast<int>(spec_.basis.size()); }
  int degree(int cls) const { return spec_.basis.at(cls).degree; }
  const std::string& class_name(int cls) const { return spec_.basis.at(cls).name; }
  int unit() const { return unit_; }
  int point() const { return point_; }
  int index_of(std::string_view name) const;

  const ClassVector& classical(int i, int j) const { return classical_[i][j]; }
  const Rational& pairing(int i, int j) const { return pairing_[i][j]; }
  Rational pairing(const ClassVector& a, const ClassVector& b) const;
  // Dual class xi_i^{*M}: pairing(dual(i), xi_j) = delta_ij.
  const ClassVector& dual(int i) const { return duals_[i]; }
  ClassVector classical(const ClassVector& a, const ClassVector& b) const;

  Rational omega(const Lattice& beta) const;
  long c1(const Lattice& beta) const;
  bool has_h2_classes() const { return !h2_classes_.empty(); }
  ClassVector h2_class(const Lattice& beta) const;
  // Intersection number of beta with a class of degree 2n-2.
  Rational beta_dot(const Lattice& beta, const ClassVector& divisor) const;

  // Symmetric closure of the table, one entry per ordered triple.
  const std::vector<GwEntry>& gw() const { return gw_closed_; }
  Rational gw_value(const Lattice& beta, int i, int j, int k) const;
  Rational gw_value(const Lattice& beta, const ClassVector& a, const ClassVector& b,
                    const ClassVector& c) const;
  // Distinct nonzero curve classes with a nonzero table entry.
  const std::vector<Lattice>& curve_classes() const { return curve_classes_; }
  // Two-point invariant through the divisor axiom; nullopt when no basis divisor detects beta.
  std::optional<Rational> two_point(const Lattice& beta, const ClassVector& a, const ClassVector& b) const;

  const std::vector<ProductTerm>& basis_product(int i, int j) const { return products_[i][j]; }

 private:
  ManifoldSpec spec_;
  int unit_ = -1;
  int point_ = -1;
  std::vector<std::vector<ClassVector>> classical_;
  std::vector<std::vector<Rational>> pairing_;
  std::vector<ClassVector> duals_;
  std::vector<ClassVector> h2_classes_;
  std::vector<GwEntry> gw_closed_;
  std::map<std::pair<Lattice, std::array<int, 3>>, Rational> gw_index_;
  std::vector<Lattice> curve_classes_;
  std::vector<std::vector<std::vector<ProductTerm>>> products_;
};

// Sum of coef (x) xi_cls q^qpow with scalar coefficients.
class QElement {
 public:
  using Key = std::pair<int, long>;  // (basis class, q-power)

  QElement() = default;
  static QElement basis(int cls, long qpow = 0, const Scalar& coef = Scalar::one());
  static QElement unit(const Manifold& m) { return basis(m.unit()); }

  const std::map<Key, Scalar>& terms() const { return terms_; }
  // Adds coef at (cls, qpow); exact zeros are never stored.
  void add(int cls, long qpow, const Scalar& coef);
  Scalar coefficient(int cls, long qpow) const;

  // No stored information beyond possibly floors.
  bool is_zero() const;
  bool is_exact() const;

  bool operator==(const QElement&) const = default;

 private:
  std::map<Key, Scalar> terms_;
};

QElement operator+(const QElement& a, const QElement& b);
QElement operator-(const QElement& a);
QElement operator-(const QElement& a, const QElement& b);
QElement scale(const QElement& a, const Scalar& c);
QElement scale(const QElement& a, const Rational& c);
QElement truncate_at_least(const QElement& a, const Rational& floor);
bool agree_above(const QElement& a, const QElement& b, const Rational& floor);
// Largest floor among the coefficients, if any.
std::optional<Rational> element_floor(const QElement& a);

int term_degree(const Manifold& m, const QElement::Key& key);
// Common degree of all terms, nullopt when inhomogeneous or zero.
std::optional<int> homogeneous_degree(const QElement& a, const Manifold& m);

QElement quantum_product(const QElement& a, const QElement& b, const Manifold& m);
QElement classical_product(const QElement& a, const QElement& b, const Manifold& m);
QElement power(const QElement& a, int k, const Manifold& m);
Valuation element_nu(const QElement& a);

// u = 1 (x) lambda q^k + y with y free of the unit class.
struct UnitSplit {
  Scalar lambda;
  long lambda_qpow = 0;
  QElement rest;
};
// Throws precondition when the unit component spans several q-powers.
UnitSplit split_unit(const QElement& u, const Manifold& m);

enum class InverseRoute { geometric_series, linear_solve };

struct Inverse {
  QElement value;
  InverseRoute route;
};

// Inverse of a unit, correct above `floor`. Uses the geometric series when
// nu(lambda) >= nu(y) or y is nilpotent, else solves u * v = 1 on the homogeneous slice.
Inverse invert_unit(const QElement& u, const Manifold& m, const Rational& floor);

enum class Certainty { certified, undetermined };

struct Nilpotency {
  bool nilpotent = false;
  std::optional<int> order;  // least k with x^k = 0
  Certainty certainty = Certainty::certified;
};

Nilpotency nilpotency_test(const QElement& x, const Manifold& m, const Rational& floor);

bool is_strongly_uniruled(const Manifold& m);

struct IdealCheck {
  bool ideal = true;
  std::optional<std::pair<int, int>> offending;
};
IdealCheck qminus_ideal_check(const Manifold& m);

// nullopt encodes infinity.
std::optional<long> minimal_chern(const Manifold& m);
std::optional<Rational> minimal_energy(const Manifold& m);

// Matrix of multiplication by u on QH_{degree}, in the basis xi_i q^{(degree - deg xi_i)/2}.
std::vector<std::vector<Scalar>> multiplication_matrix(const QElement& u, const Manifold& m, int degree);

struct ConditionD {
  bool satisfied = false;
  bool candidate_is_canonical = true;
  std::vector<ClassVector> divisor_ring;  // basis of D
  std::vector<ClassVector> complement;    // basis of V
  std::vector<std::string> violations;
};

// Condition (D) for the given complement, or for the pairing-orthogonal complement of D.
ConditionD condition_d_check(const Manifold& m, const std::optional<std::vector<ClassVector>>& candidate = std::nullopt);

std::string to_string(const QElement& a, const Manifold& m);

}  // namespace qhd::qring
