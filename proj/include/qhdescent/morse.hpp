#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qhdescent/rational.hpp"

// Morse complexes filtered by critical value, with rational coefficients.
namespace qhd::morse {

struct Generator {
  std::string name;
  int degree = 0;
  Rational value;
};

struct BoundaryEntry {
  int from = 0;
  int to = 0;
  Rational coef;
};

// Sparse chain over generator indices; no zero entries.
using Chain = std::map<int, Rational>;

class FiltrationComplex {
 public:
  // Throws Error(schema) unless d has degree -1, strictly lowers the value and d o d = 0.
  FiltrationComplex(std::vector<Generator> generators, std::vector<BoundaryEntry> boundary);

  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<BoundaryEntry>& boundary_entries() const { return entries_; }
  int size() const { return static_cast<int>(generators_.size()); }
  int index_of(std::string_view name) const;
  Chain boundary(const Chain& c) const;
  // Distinct critical values, increasing.
  std::vector<Rational> critical_values() const;

 private:
  std::vector<Generator> generators_;
  std::vector<BoundaryEntry> entries_;
  std::vector<Chain> d_;  // d_[g] = boundary of generator g
};

// Least critical value k such that the class of `a` comes from the subcomplex of
// generators with value <= k. Throws Error(precondition) when `a` is zero, not
// homogeneous, not a cycle or a boundary.
Rational spectral_number(const Chain& a, const FiltrationComplex& c);

// Complex of -K from the complex of K: values negated, degrees d -> dim - d and
// the boundary transposed. `dim` defaults to the top generator degree.
FiltrationComplex reversed(const FiltrationComplex& c, std::optional<int> dim = std::nullopt);

// c(a, phi^H) = c_M(a, -H); `a` is a cycle of the reversed complex.
Rational morse_to_spectral(const Chain& a, const FiltrationComplex& h_complex, std::optional<int> dim = std::nullopt);

}  // namespace qhd::morse
