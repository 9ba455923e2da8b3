#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhdescent/seidel.hpp"

namespace qhd::descent {

using qring::Manifold;
using qring::QElement;
using seidel::SeidelElement;

enum class Outcome { descend, not_descend, undetermined };
std::string to_string(Outcome o);

struct Witness {
  std::string label;
  std::string reason;
};

struct DescentVerdict {
  Outcome spectral = Outcome::undetermined;
  Outcome asymptotic = Outcome::undetermined;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;
};

enum class ExactRoute { none, nilpotent_lower_part, newton_polygon, interval };
std::string to_string(ExactRoute r);

// Two-sided bounds on lim nu(u^k)/k.
struct AsymptoticEstimate {
  std::optional<Rational> lower;  // absent when the inverse leg failed
  Rational upper;
  std::optional<Rational> exact;
  ExactRoute route = ExactRoute::none;
  int k_max = 0;
  std::vector<novikov::Valuation> powers;          // nu(u^k), k = 1..k_max
  std::vector<novikov::Valuation> inverse_powers;  // nu(u^-k), k = 1..k_max when available
  std::vector<std::string> notes;
};

// `inverse`, when given, must be u^-1 correct above `floor`; it replaces the internal inversion.
AsymptoticEstimate asymptotic_valuation(const QElement& u, const Manifold& m, int k_max, const Rational& floor,
                                        const QElement* inverse = nullptr);

// Maximal valuation of an eigenvalue of multiplication by a homogeneous degree-2n
// element, read off the Newton polygon of its characteristic polynomial; nullopt
// when a coefficient is only known up to a floor.
std::optional<Rational> spectral_radius_valuation(const QElement& u, const Manifold& m);

struct SpectralResult {
  Outcome outcome = Outcome::undetermined;
  std::vector<Witness> witnesses;
};
SpectralResult spectral_descent(const std::vector<SeidelElement>& elements, const Manifold& m, int k_max,
                                const Rational& floor);

struct AsymptoticResult {
  Outcome outcome = Outcome::descend;
  std::vector<Witness> witnesses;
  std::map<std::string, AsymptoticEstimate> estimates;
};
AsymptoticResult asymptotic_descent(const std::vector<SeidelElement>& elements, const Manifold& m, int k_max,
                                    const Rational& floor);

// Both criteria. Spectral descent forces asymptotic descent; a contradicting
// asymptotic computation raises an internal error.
DescentVerdict decide(const std::vector<SeidelElement>& elements, const Manifold& m, int k_max, const Rational& floor,
                      AsymptoticResult* details = nullptr);

struct GrowthRow {
  Rational s;
  std::string cls;
  Rational value;
};
// c(a, psi_s) = -H(p_a) + s I for every class and grid point.
std::vector<GrowthRow> ostrover_growth(const std::map<std::string, Rational>& morse_values, const Rational& slope_I,
                                       const std::vector<Rational>& s_grid);

struct DiameterCertificate {
  bool issued = false;
  std::string reason;
  Rational slope;
  std::vector<std::string> chain;
  std::string lower_bound;
};
DiameterCertificate diameter_certificate(const DescentVerdict& verdict, const std::vector<GrowthRow>& growth);

}  // namespace qhd::descent
