#include "qhdescent/bundled.hpp"

#include "qhdescent/errors.hpp"
#include "qhdescent/gallery.hpp"

namespace qhd::bundled {

using qring::QElement;
using seidel::SeidelElement;

namespace {

SeidelElement monomial(const qring::Manifold& m, const std::string& cls, long qpow, const Rational& exponent,
                       std::string label) {
  return seidel::make_element(QElement::basis(m.index_of(cls), qpow, novikov::Scalar::monomial(1, exponent)), m,
                              std::move(label));
}

seidel::BlowupParams params(const Rational& delta) {
  seidel::BlowupParams p;
  p.delta = delta;
  return p;
}

}  // namespace

fibration::FibrationSpec fibration_spec(std::string_view name, const Rational& delta) {
  if (name == "cp1_x_s2") return fibration::product_fibration(gallery::cp1_spec());
  if (name == "cp2_x_s2") return fibration::product_fibration(gallery::cp2_spec());
  if (name == "s2xs2_x_s2") return fibration::product_fibration(gallery::s2xs2_spec());
  if (name == "blowup_cp2") {
    const auto loop = seidel::blowup_cp2_line(params(delta));
    return fibration::fibration_from_seidel(loop.manifold, loop.element, 0, -loop.kappa, "blowup_cp2");
  }
  if (name == "blowup_t4") {
    const auto loop = seidel::blowup_t4_zero(params(delta));
    return fibration::fibration_from_seidel(loop.manifold, loop.element, 0, 0, "blowup_t4");
  }
  fail(ErrorKind::precondition, "unknown bundled fibration \"" + std::string(name) + "\"");
}

const std::vector<std::string>& fibration_names() {
  static const std::vector<std::string> names{"cp1_x_s2", "cp2_x_s2", "s2xs2_x_s2", "blowup_cp2", "blowup_t4"};
  return names;
}

std::vector<SeidelElement> loop_elements(std::string_view manifold, const qring::Manifold& m, const Rational& delta) {
  if (manifold == "cp1") return {monomial(m, "pt", 1, m.omega({1}) / 2, "rotation")};
  if (manifold == "cp2") return {monomial(m, "pt", 2, Rational(2, 3) * m.omega({1}), "rotation")};
  if (manifold == "s2xs2")
    return {monomial(m, "B", 1, m.omega({1, 0}) / 2, "rotation_1"), monomial(m, "A", 1, m.omega({0, 1}) / 2, "rotation_2")};
  if (manifold == "blowup_cp2") return {seidel::blowup_cp2_line(params(delta)).element};
  if (manifold == "blowup_t4") return {seidel::blowup_t4_zero(params(delta)).element};
  if (manifold == "t2") return {seidel::make_element(QElement::unit(m), m, "identity")};
  fail(ErrorKind::precondition, "no bundled loop on \"" + std::string(manifold) + "\"");
}

morse::FiltrationComplex torus_complex() {
  return morse::FiltrationComplex({{"min", 0, Rational(0)},
                                   {"saddle_a", 1, Rational(1)},
                                   {"saddle_b", 1, Rational(2)},
                                   {"max", 2, Rational(3)}},
                                  {});
}

std::vector<io::NamedCycle> torus_cycles(const morse::FiltrationComplex& c) {
  // In the complex of -H the minimum of H has top degree.
  return {{"1", {{c.index_of("min"), Rational(1)}}}, {"pt", {{c.index_of("max"), Rational(1)}}}};
}

}  // namespace qhd::bundled
