#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qhdescent/descent.hpp"
#include "qhdescent/fibration.hpp"
#include "qhdescent/io.hpp"
#include "qhdescent/morse.hpp"

// Reports produced by the command-line verbs. Every report is a JSON object
// {"outcome", "summary", "data"}; the text form is derived from it.
// outcome is one of ok, violation, descend, not_descend, undetermined.
namespace qhd::report {

using io::Json;

struct Options {
  int k_max = 50;
  Rational floor{-100};
  Rational delta{1, 10};
};

// 0 for ok and descend, 1 for violation and not_descend, 3 for undetermined.
int exit_code(const std::string& outcome);
std::string render_text(const Json& report);

Json nu_report(const novikov::Scalar& s);
Json element_nu_report(const std::vector<seidel::SeidelElement>& elements, const qring::Manifold& m);
Json product_report(const qring::QElement& a, const qring::QElement& b, const qring::Manifold& m);
Json invert_report(const std::vector<seidel::SeidelElement>& elements, const qring::Manifold& m, const Options& opt);
Json classify_report(const std::vector<seidel::SeidelElement>& elements, const qring::Manifold& m);
Json descent_report(const std::vector<seidel::SeidelElement>& elements, const qring::Manifold& m, const Options& opt);
Json asymptotic_report(const std::vector<seidel::SeidelElement>& elements, const qring::Manifold& m,
                       const Options& opt);
// `negate`: the cycle lives in the complex of -H and the value is c(a, phi^H).
Json morse_report(const morse::FiltrationComplex& c, const morse::Chain& cycle, bool negate);

struct LoopData {
  const qring::Manifold* manifold = nullptr;
  std::vector<seidel::SeidelElement> elements;
};
// Cycles live in the complex of -H; values are c(a, phi^H) = -H(p_a). Without a
// loop the certificate is declined for lack of a verdict.
Json ostrover_report(const morse::FiltrationComplex& c, const std::vector<io::NamedCycle>& cycles,
                     const Rational& slope, const std::vector<Rational>& s_grid, const std::optional<LoopData>& loop,
                     const Options& opt);
Json fibration_report(const fibration::Fibration& f);

const std::vector<std::string>& example_names();
Json example_report(const std::string& name, const Options& opt);
// Runs every example concurrently; violation if any example reports one, else ok.
Json all_examples_report(const Options& opt);

}  // namespace qhd::report
