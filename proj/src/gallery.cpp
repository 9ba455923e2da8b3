#include "qhdescent/gallery.hpp"

#include "qhdescent/errors.hpp"

namespace qhd::gallery {

using qring::ClassicalEntry;
using qring::GwEntry;
using qring::ManifoldSpec;

namespace {

ClassicalEntry product(int i, int j, int k, const Rational& c) { return {i, j, {{k, c}}}; }

// One table entry; Manifold closes the table under permutations.
void add_gw(ManifoldSpec& s, const qring::Lattice& beta, int a, int b, int c, const Rational& value) {
  s.gw.push_back({beta, {a, b, c}, value});
}

}  // namespace

ManifoldSpec cp1_spec(const Rational& area) {
  ManifoldSpec s;
  s.name = "cp1";
  s.n = 1;
  s.basis = {{"1", 2}, {"pt", 0}};
  s.h2_rank = 1;
  s.omega = {area};
  s.c1 = {2};
  add_gw(s, {1}, 1, 1, 1, 1);
  return s;
}

ManifoldSpec cp2_undeformed_spec() {
  ManifoldSpec s;
  s.name = "cp2_undeformed";
  s.n = 2;
  s.basis = {{"1", 4}, {"L", 2}, {"pt", 0}};
  s.classical = {product(1, 1, 2, 1)};
  s.h2_rank = 1;
  s.omega = {Rational(1)};
  s.c1 = {3};
  return s;
}

ManifoldSpec cp2_spec() {
  ManifoldSpec s = cp2_undeformed_spec();
  s.name = "cp2";
  add_gw(s, {1}, 2, 2, 1, 1);
  return s;
}

ManifoldSpec blowup_cp2_spec(const Rational& delta) {
  if (cmp(delta, 0) <= 0 || cmp(delta, 1) >= 0)
    fail(ErrorKind::precondition, "blow-up of CP^2 needs 0 < delta < 1");
  ManifoldSpec s;
  s.name = "blowup_cp2";
  s.n = 2;
  s.basis = {{"1", 4}, {"L", 2}, {"E", 2}, {"pt", 0}};
  s.classical = {product(1, 1, 3, 1), product(2, 2, 3, -1)};
  s.h2_rank = 2;  // generators L, E
  s.omega = {Rational(1), delta};
  s.c1 = {3, 1};
  add_gw(s, {0, 1}, 2, 2, 2, -1);  // exceptional sphere
  add_gw(s, {1, 0}, 3, 3, 1, 1);   // lines through two points
  for (int a : {1, 2})
    for (int b : {1, 2})
      if (a <= b) add_gw(s, {1, -1}, 3, a, b, 1);  // lines through the blown-up point
  return s;
}

ManifoldSpec blowup_t4_spec(const Rational& delta) {
  if (cmp(delta, 0) <= 0) fail(ErrorKind::precondition, "blow-up of T^4 needs delta > 0");
  ManifoldSpec s;
  s.name = "blowup_t4";
  s.n = 2;
  s.basis = {{"1", 4},   {"T12", 2}, {"T13", 2}, {"T14", 2}, {"T23", 2},
             {"T24", 2}, {"T34", 2}, {"E", 2},   {"pt", 0}};
  const int pt = 8;
  s.classical = {product(1, 6, pt, 1), product(2, 5, pt, -1), product(3, 4, pt, 1), product(7, 7, pt, -1)};
  s.h2_rank = 1;  // the exceptional sphere spans the spherical classes
  s.omega = {delta};
  s.c1 = {1};
  s.h2_classes = {{{7, Rational(1)}}};
  add_gw(s, {1}, 7, 7, 7, -1);
  return s;
}

ManifoldSpec s2xs2_spec(const Rational& a, const Rational& b) {
  ManifoldSpec s;
  s.name = "s2xs2";
  s.n = 2;
  s.basis = {{"1", 4}, {"A", 2}, {"B", 2}, {"pt", 0}};
  s.classical = {product(1, 2, 3, 1)};
  s.h2_rank = 2;
  s.omega = {a, b};
  s.c1 = {2, 2};
  add_gw(s, {1, 0}, 3, 2, 2, 1);
  add_gw(s, {0, 1}, 3, 1, 1, 1);
  add_gw(s, {1, 1}, 3, 3, 3, 1);
  return s;
}

ManifoldSpec t2_spec() {
  ManifoldSpec s;
  s.name = "t2";
  s.n = 1;
  s.basis = {{"1", 2}, {"pt", 0}};
  return s;
}

ManifoldSpec manifold_spec(std::string_view name, const Rational& delta) {
  if (name == "cp1") return cp1_spec();
  if (name == "cp2") return cp2_spec();
  if (name == "cp2_undeformed") return cp2_undeformed_spec();
  if (name == "blowup_cp2") return blowup_cp2_spec(delta);
  if (name == "blowup_t4") return blowup_t4_spec(delta);
  if (name == "s2xs2") return s2xs2_spec();
  if (name == "t2") return t2_spec();
  fail(ErrorKind::precondition, "unknown bundled manifold \"" + std::string(name) + "\"");
}

const std::vector<std::string>& manifold_names() {
  static const std::vector<std::string> names{"cp1", "cp2", "cp2_undeformed", "blowup_cp2", "blowup_t4", "s2xs2", "t2"};
  return names;
}

}  // namespace qhd::gallery
