#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qhdescent/qring.hpp"
#include "qhdescent/seidel.hpp"

// Hamiltonian fibrations P -> S^2 with fiber M, described by finite tables.
//
// Extended basis of H_ev(P): index i < m is the fiber class xi_i, index m + i is
// the lifted class xi_i^* with xi_i . xi_j^* = delta_ij and xi_i^* . xi_j^* = 0,
// where m is the fiber basis size. P-degree of xi_i^* is 2n + 2 - deg xi_i.
namespace qhd::fibration {

using qring::ClassVector;
using qring::Lattice;
using qring::Manifold;

// mult * sigma0 + beta in H_2(P); mult is 0 (fiber class) or 1 (section class).
struct PClass {
  int mult = 0;
  Lattice beta;
  auto operator<=>(const PClass&) const = default;
};

struct PEntry {
  PClass alpha;
  std::vector<int> classes;  // 1 to 3 extended indices
  Rational value;
};

// Intersection product xi_i . xi_j in H_*(P) over the extended basis.
struct PProduct {
  int i = 0;
  int j = 0;
  ClassVector result;
};

struct FibrationSpec {
  std::string name;
  qring::ManifoldSpec fiber;
  long sigma0_c1vert = 0;
  Rational sigma0_u;
  ClassVector sigma0;  // empty: the lifted fundamental class M^*
  std::vector<PEntry> invariants;
  std::vector<PProduct> p_intersection;
  // Every invariant absent from the tables is zero.
  bool tables_complete = false;
};

// Deduplicated warnings gathered while evaluating invariants.
using Warnings = std::set<std::string>;

class Fibration {
 public:
  // Validates the pairing of the extended basis against p_intersection, the
  // restriction of every supplied product to the fiber, sigma0 . M = 1 and the
  // shape of every table entry. Throws Error(schema).
  explicit Fibration(FibrationSpec spec);

  const FibrationSpec& spec() const { return spec_; }
  const Manifold& fiber() const { return fiber_; }
  int fiber_size() const { return fiber_.size(); }
  int size() const { return 2 * fiber_.size(); }
  int n() const { return fiber_.n(); }
  bool is_lifted(int e) const { return e >= fiber_size(); }
  int base(int e) const { return is_lifted(e) ? e - fiber_size() : e; }
  int lifted(int i) const { return i + fiber_size(); }
  int degree(int e) const;
  std::string class_name(int e) const;
  int index_of(const std::string& name) const;
  // Dual basis element under the extended pairing.
  int dual(int e) const { return is_lifted(e) ? base(e) : lifted(e); }

  // v cap M as a class of the fiber.
  ClassVector cap_fiber(const ClassVector& v) const;
  Rational pairing(const ClassVector& x, const ClassVector& y) const;
  // Intersection product; nullopt when two lifted classes meet without table data.
  std::optional<ClassVector> product(int i, int j) const;
  std::optional<ClassVector> product(const ClassVector& x, const ClassVector& y) const;

  const ClassVector& sigma0() const { return sigma0_; }
  long c1(const PClass& alpha) const;
  // alpha . H for H of degree 2n.
  Rational dot(const PClass& alpha, const ClassVector& h) const;
  bool dimension_allowed(const PClass& alpha, const std::vector<int>& classes) const;

  // Stored table value, if any.
  std::optional<Rational> stored(const PClass& alpha, std::vector<int> classes) const;
  // Value of <classes>_alpha: dimension filter, fundamental class axiom, fiber
  // reductions, the tables, then the divisor axiom; absent entries count as zero
  // and add a warning starting with "missing" unless the tables are complete.
  Rational gw(const PClass& alpha, const std::vector<int>& classes, Warnings* warnings) const;
  Rational gw(const PClass& alpha, const std::vector<ClassVector>& classes, Warnings* warnings) const;

  // Section and fiber classes with table data or fiber invariants.
  std::vector<PClass> relevant_classes() const;

  // One-point section entries in fiber classes, for the Seidel element.
  seidel::SectionTable section_table() const;

 private:
  FibrationSpec spec_;
  Manifold fiber_;
  ClassVector sigma0_;
  std::map<std::pair<int, int>, ClassVector> lifted_products_;
  std::map<std::pair<PClass, std::vector<int>>, Rational> table_;
};

std::string to_string(const PClass& alpha);

// Value forced on a fiber-class invariant with at least one fiber insertion:
// two or more fiber insertions give 0, one gives the fiber invariant. nullopt
// when the entry has no fiber insertion or is not a fiber class.
std::optional<Rational> fiber_reduction(const Fibration& f, const PClass& alpha, const std::vector<int>& classes);

struct CheckReport {
  std::string name;
  bool passed = true;
  int checked = 0;
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
};

CheckReport check_pairing(const Fibration& f);
CheckReport check_dimension(const Fibration& f);
CheckReport check_fiber_reductions(const Fibration& f);
CheckReport check_divisor_axiom(const Fibration& f);
CheckReport check_lp(const Fibration& f);
std::vector<CheckReport> check_all(const Fibration& f);

struct LPInstance {
  ClassVector h;
  int u = 0;
  int v = 0;
  int w = 0;
  PClass alpha;
};

// <Hu, v, w>_alpha - <u, Hv, w>_alpha plus the splitting sum; zero when the tables
// are consistent. Throws Error(unsupported) when alpha . H != 0.
Rational lp_residual(const LPInstance& inst, const Fibration& f, Warnings* warnings = nullptr);

// s(a) with s(a) . v = <a, v>_{sigma0} / r0. Throws Error(precondition) when r0 = 0.
ClassVector s_map(const Fibration& f, int fiber_class, Warnings* warnings = nullptr);

enum class CouplingStatus { certified, fails, undetermined };
std::string to_string(CouplingStatus s);

struct CouplingCertificate {
  CouplingStatus status = CouplingStatus::undetermined;
  std::map<std::string, std::string> conditions;  // "a", "b", "c" -> holds / fails / undetermined
  std::vector<std::string> details;
  std::string conclusion;
};

// Checks H cap M = PD(omega) on H_2^S(M), H . sigma0 = 0 and H^{n+1} = 0.
CouplingCertificate coupling_certificate(const Fibration& f, const ClassVector& h);

// Trivial fibration M x S^2 with invariants from the product formula.
FibrationSpec product_fibration(const qring::ManifoldSpec& fiber);
// One- and two-point section tables read off S and S * b for a Seidel element;
// sigma0 is the section with the given vertical Chern number and coupling value.
FibrationSpec fibration_from_seidel(const Manifold& m, const seidel::SeidelElement& s, long sigma0_c1vert,
                                    const Rational& sigma0_u, std::string name);

}  // namespace qhd::fibration
