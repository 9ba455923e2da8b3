#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qhdescent/fibration.hpp"
#include "qhdescent/io.hpp"
#include "qhdescent/morse.hpp"
#include "qhdescent/seidel.hpp"

// Fibrations, loops and complexes shipped with the tool. The files under data/
// are these objects at delta = 1/10.
namespace qhd::bundled {

// cp1_x_s2, cp2_x_s2, s2xs2_x_s2 (products), blowup_cp2, blowup_t4 (from the loops).
fibration::FibrationSpec fibration_spec(std::string_view name, const Rational& delta = Rational(1, 10));
const std::vector<std::string>& fibration_names();

// Seidel elements of the bundled loops on a bundled manifold.
std::vector<seidel::SeidelElement> loop_elements(std::string_view manifold, const qring::Manifold& m,
                                                 const Rational& delta = Rational(1, 10));

// Perfect Morse function on T^2 with values 0, 1, 2, 3.
morse::FiltrationComplex torus_complex();
// Fundamental class and point as cycles of the complex of -H.
std::vector<io::NamedCycle> torus_cycles(const morse::FiltrationComplex& c);

}  // namespace qhd::bundled
