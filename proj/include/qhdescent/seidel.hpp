#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhdescent/qring.hpp"

namespace qhd::seidel {

using qring::Lattice;
using qring::Manifold;
using qring::QElement;

// Invertible homogeneous class of degree 2n attached to a loop.
struct SeidelElement {
  QElement element;
  std::string label;
};

// Checks homogeneity in degree 2n and invertibility.
SeidelElement make_element(const QElement& element, const Manifold& m, std::string label);

// One-point section invariant <xi_cls>_{sigma0 + beta}.
struct OnePointEntry {
  Lattice beta;
  int cls = 0;
  Rational value;
};

struct SectionTable {
  long sigma0_c1vert = 0;
  Rational sigma0_u;
  std::vector<OnePointEntry> entries;
};

long section_c1vert(const SectionTable& t, const Manifold& m, const Lattice& beta);
Rational section_u(const SectionTable& t, const Manifold& m, const Lattice& beta);
// A one-point invariant <xi>_sigma can be nonzero only if 2 c1vert(sigma) + deg xi = 0.
bool dimension_filter(long c1vert, int degree);

SeidelElement seidel_from_table(const SectionTable& t, const Manifold& m, std::string label);
SeidelElement compose(const SeidelElement& a, const SeidelElement& b, const Manifold& m);

enum class Monotonicity { spherically_monotone, negatively_monotone, omega_zero, none };
std::string to_string(Monotonicity mono);

struct SeidelContext {
  int n = 0;
  std::optional<long> minimal_chern;  // nullopt: infinity
  Monotonicity monotonicity = Monotonicity::none;
  bool strongly_uniruled = false;
  int h2_rank = 0;
};

SeidelContext context_for(const Manifold& m);

struct CaseCheck {
  std::string name;  // "i" .. "v"
  std::string shape;
  bool conforms = true;
  std::string detail;
};

struct Classification {
  bool conforms = true;
  std::vector<CaseCheck> cases;  // every structural case that applies to the context
  std::vector<std::string> violations;
};

// Checks the element against every structural case the context forces. The
// power check of case (ii) for strongly uniruled manifolds needs `m`.
Classification classify_form(const SeidelElement& s, const SeidelContext& ctx, const Manifold* m = nullptr);

// Level -c1vert reduced modulo N into [0, n]; requires N > n.
int level_of(long c1vert, long N, int n);
// k * d reduced modulo N into [0, n]; requires N > n.
int power_level(int d, long k, long N, int n);

// Novikov exponent of the unit term for the loop lifted to a blow-up of size delta.
Rational blowup_kappa(const Rational& volume, const Rational& delta, const Rational& mu, long ell, int n);

struct BlowupParams {
  Rational delta{1, 10};
  // t4_zero coefficients; illustrative defaults.
  Rational s{1};
  Rational r{1};
  // T^4 volume bounding the ball size.
  Rational volume{1};
};

struct BlowupLoop {
  Manifold manifold;
  SeidelElement element;
  SeidelElement inverse;  // from the documented closed form
  Rational kappa;
};

// Loop from the graph of the line class on the one-point blow-up of CP^2.
BlowupLoop blowup_cp2_line(const BlowupParams& params);
// Lift of a loop of translations to the one-point blow-up of T^4.
BlowupLoop blowup_t4_zero(const BlowupParams& params);
// Unit term 1 (x) t^kappa plus caller-supplied lower terms.
SeidelElement blowup_general_graph(const Manifold& m, const Rational& volume, const Rational& delta, const Rational& mu,
                                   long ell, const QElement& lower_terms, std::string label);

}  // namespace qhd::seidel
