#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qhdescent/qring.hpp"

// Manifolds shipped with the tool. The JSON files under data/ are these specs at
// the default parameters.
namespace qhd::gallery {

// S^2 with area `area`.
qring::ManifoldSpec cp1_spec(const Rational& area = 1);
// CP^2 with omega(L) = 1 and the line-through-two-points invariant.
qring::ManifoldSpec cp2_spec();
// CP^2 with the Gromov-Witten table removed.
qring::ManifoldSpec cp2_undeformed_spec();
// One-point blow-up of CP^2 with exceptional curve of area delta.
qring::ManifoldSpec blowup_cp2_spec(const Rational& delta);
// One-point blow-up of T^4 with exceptional curve of area delta.
qring::ManifoldSpec blowup_t4_spec(const Rational& delta);
// S^2 x S^2 with factor areas a and b.
qring::ManifoldSpec s2xs2_spec(const Rational& a = 1, const Rational& b = 1);
// Even part of T^2; no spherical classes.
qring::ManifoldSpec t2_spec();

// Bundled manifold by file stem: cp1, cp2, cp2_undeformed, blowup_cp2, blowup_t4, s2xs2, t2.
qring::ManifoldSpec manifold_spec(std::string_view name, const Rational& delta = Rational(1, 10));
const std::vector<std::string>& manifold_names();

}  // namespace qhd::gallery
