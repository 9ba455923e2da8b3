#include "doctest.h"
#include "qhdescent/errors.hpp"
#include "support.hpp"

using namespace qhd;
using namespace qhd::testing;

namespace {

Manifold bundled(const std::string& name) { return Manifold(gallery::manifold_spec(name)); }

QElement random_exact_element(Rng& rng, const Manifold& m) { return random_element(rng, m, 3); }

}  // namespace

TEST_SUITE("qring") {
  TEST_CASE("basis products match the closed invariant table") {
    for (const auto& name : bundled_manifold_names()) {
      CAPTURE(name);
      const Manifold m = bundled(name);
      for (int i = 0; i < m.size(); ++i)
        for (int j = 0; j < m.size(); ++j) {
          CAPTURE(i);
          CAPTURE(j);
          const auto product = qring::quantum_product(QElement::basis(i), QElement::basis(j), m);
          CHECK(dense_element(product) == oracle_basis_product(m, i, j));
        }
    }
  }

  TEST_CASE("an empty invariant table gives the intersection product") {
    const Manifold m = bundled("cp2_undeformed");
    for (int i = 0; i < m.size(); ++i)
      for (int j = 0; j < m.size(); ++j) {
        const auto a = QElement::basis(i), b = QElement::basis(j);
        CHECK(qring::quantum_product(a, b, m) == qring::classical_product(a, b, m));
      }
  }

  TEST_CASE("point squared on the sphere") {
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
      Rational area;
      do area = random_rational(rng, 9);
      while (area <= 0);
      const Manifold m(gallery::cp1_spec(area));
      const auto pt = QElement::basis(m.point());
      const auto expected = QElement::basis(m.unit(), -2, Scalar::monomial(1, -area));
      CHECK(qring::quantum_product(pt, pt, m) == expected);
    }
  }

  TEST_CASE("products are associative and commutative") {
    Rng rng(22);
    for (const auto& name : bundled_manifold_names()) {
      CAPTURE(name);
      const Manifold m = bundled(name);
      for (int trial = 0; trial < 15; ++trial) {
        const auto a = random_exact_element(rng, m), b = random_exact_element(rng, m), c = random_exact_element(rng, m);
        const auto ab = qring::quantum_product(a, b, m);
        CHECK(ab == qring::quantum_product(b, a, m));
        CHECK(qring::quantum_product(ab, c, m) == qring::quantum_product(a, qring::quantum_product(b, c, m), m));
      }
    }
  }

  TEST_CASE("quantum corrections sit at least the minimal energy below") {
    Rng rng(23);
    for (const auto& name : bundled_manifold_names()) {
      CAPTURE(name);
      const Manifold m = bundled(name);
      const auto energy = qring::minimal_energy(m);
      for (int trial = 0; trial < 40; ++trial) {
        const auto a = random_exact_element(rng, m), b = random_exact_element(rng, m);
        const auto deviation = qring::quantum_product(a, b, m) - qring::classical_product(a, b, m);
        if (!energy) {
          CHECK(deviation.is_zero());
          continue;
        }
        const auto bound = qring::element_nu(a) + qring::element_nu(b) + novikov::Valuation(-*energy);
        CHECK((qring::element_nu(deviation) <= bound));
      }
    }
  }

  TEST_CASE("unit inverses round-trip above the floor") {
    Rng rng(24);
    const Rational floor(-60);
    for (const char* name : {"cp2_undeformed", "t2", "cp1", "s2xs2"}) {
      CAPTURE(name);
      const Manifold m = bundled(name);
      for (int trial = 0; trial < 20; ++trial) {
        const Scalar mu = m.size() > 3 ? Scalar::monomial(random_nonzero(rng), random_rational(rng, 2)) : random_scalar(rng, 2);
        const auto u = random_unit_shape(rng, m, mu);
        const auto inv = qring::invert_unit(u, m, floor);
        const auto product = qring::quantum_product(u, inv.value, m);
        const auto f = qring::element_floor(product);
        CHECK(qring::agree_above(product, QElement::unit(m), f ? *f : floor));
        if (f) CHECK(*f <= floor + 20);
      }
    }
  }

  TEST_CASE("a unit term carrying a q-power inverts") {
    for (const char* name : {"cp2_undeformed", "cp2"}) {
      CAPTURE(name);
      const Manifold m = bundled(name);
      QElement u = QElement::basis(m.unit(), 1, Scalar::monomial(2, 0));
      u.add(m.index_of("L"), 0, Scalar::monomial(1, -1));
      u.add(m.point(), 2, Scalar::monomial(Rational(-1, 3), -2));
      const Rational floor(-30);
      const auto inv = qring::invert_unit(u, m, floor);
      CHECK(inv.route == qring::InverseRoute::geometric_series);
      const auto product = qring::quantum_product(u, inv.value, m);
      const auto f = qring::element_floor(product);
      CHECK(qring::agree_above(product, QElement::unit(m), f ? *f : floor));
      if (f) CHECK(*f <= floor + 20);
    }
  }

  TEST_CASE("split_unit separates the unit component") {
    const Manifold m = bundled("cp2");
    QElement u = QElement::basis(m.unit(), 0, Scalar::monomial(2, 1));
    u.add(m.point(), 2, Scalar::monomial(1, 0));
    const auto split = qring::split_unit(u, m);
    CHECK(split.lambda == Scalar::monomial(2, 1));
    CHECK(split.rest == QElement::basis(m.point(), 2));
    u.add(m.unit(), 1, Scalar::one());
    CHECK_THROWS_AS(qring::split_unit(u, m), Error);
  }

  TEST_CASE("nilpotency of the lower part") {
    const Manifold undeformed = bundled("cp2_undeformed");
    const auto line = QElement::basis(undeformed.index_of("L"), 1);
    const auto verdict = qring::nilpotency_test(line, undeformed, Rational(-50));
    CHECK(verdict.nilpotent);
    CHECK(verdict.order == 3);
    const Manifold cp2 = bundled("cp2");
    CHECK_FALSE(qring::nilpotency_test(QElement::basis(cp2.index_of("L"), 1), cp2, Rational(-50)).nilpotent);
  }

  TEST_CASE("structural invariants of the bundled manifolds") {
    CHECK(qring::is_strongly_uniruled(bundled("cp1")));
    CHECK(qring::is_strongly_uniruled(bundled("cp2")));
    CHECK_FALSE(qring::is_strongly_uniruled(bundled("cp2_undeformed")));
    CHECK_FALSE(qring::is_strongly_uniruled(bundled("t2")));
    CHECK(qring::minimal_chern(bundled("cp2")) == 3);
    CHECK(qring::minimal_chern(bundled("cp1")) == 2);
    CHECK(qring::minimal_chern(bundled("s2xs2")) == 2);
    CHECK_FALSE(qring::minimal_chern(bundled("t2")).has_value());
    CHECK(qring::minimal_energy(bundled("cp2")) == Rational(1));
  }

  TEST_CASE("invalid manifold data is rejected") {
    auto spec = gallery::cp2_spec();
    spec.basis.push_back({"L", 2});
    CHECK_THROWS_AS(Manifold{spec}, Error);
    spec = gallery::cp2_spec();
    spec.gw.front().value = Rational(1, 2);
    spec.gw.front().classes[0] = 5;
    CHECK_THROWS_AS(Manifold{spec}, Error);
    spec = gallery::cp2_spec();
    spec.omega.clear();
    CHECK_THROWS_AS(Manifold{spec}, Error);
  }
}
