#include "doctest.h"
#include "qhdescent/bundled.hpp"
#include "qhdescent/errors.hpp"
#include "support.hpp"

using namespace qhd;
using namespace qhd::testing;
using descent::Outcome;

namespace {

const Rational kFloor(-100);

std::vector<seidel::SeidelElement> loops(const std::string& name, const Manifold& m) {
  return bundled::loop_elements(name, m);
}

}  // namespace

TEST_SUITE("descent") {
  TEST_CASE("verdicts on the bundled loops") {
    struct Expected {
      const char* name;
      Outcome spectral;
      Outcome asymptotic;
    };
    for (const auto& e : {Expected{"cp1", Outcome::not_descend, Outcome::descend},
                          Expected{"cp2", Outcome::not_descend, Outcome::descend},
                          Expected{"s2xs2", Outcome::not_descend, Outcome::descend},
                          Expected{"t2", Outcome::descend, Outcome::descend},
                          Expected{"blowup_cp2", Outcome::not_descend, Outcome::not_descend}}) {
      CAPTURE(e.name);
      const Manifold m(gallery::manifold_spec(e.name));
      const auto verdict = descent::decide(loops(e.name, m), m, 50, kFloor);
      CHECK(verdict.spectral == e.spectral);
      CHECK(verdict.asymptotic == e.asymptotic);
    }
  }

  TEST_CASE("asymptotic valuation of a rotation is its unit exponent share") {
    const Manifold m(gallery::manifold_spec("cp2"));
    const auto est = descent::asymptotic_valuation(loops("cp2", m).front().element, m, 30, kFloor);
    REQUIRE(est.exact.has_value());
    CHECK(*est.exact == 0);
    REQUIRE(est.lower.has_value());
    CHECK(*est.lower <= 0);
    CHECK(est.upper >= 0);
  }

  TEST_CASE("power valuations are subadditive") {
    Rng rng(41);
    for (const char* name : {"cp2_undeformed", "t2", "cp2", "s2xs2"}) {
      CAPTURE(name);
      const Manifold m(gallery::manifold_spec(name));
      for (int trial = 0; trial < 10; ++trial) {
        const auto u = random_unit_shape(rng, m, Scalar::monomial(random_nonzero(rng), random_rational(rng, 2)));
        const auto est = descent::asymptotic_valuation(u, m, 12, Rational(-30));
        const auto& p = est.powers;
        for (std::size_t j = 0; j < p.size(); ++j)
          for (std::size_t k = 0; j + k + 1 < p.size(); ++k) {
            if (p[j].is_bottom() || p[k].is_bottom()) continue;
            CHECK((p[j + k + 1] <= p[j] + p[k]));
          }
      }
    }
  }

  TEST_CASE("nilpotent lower part: the limit is the unit valuation") {
    Rng rng(42);
    const Manifold m(gallery::manifold_spec("cp2_undeformed"));
    for (int trial = 0; trial < 20; ++trial) {
      const Rational e = random_rational(rng, 3);
      const auto u = random_unit_shape(rng, m, Scalar::monomial(random_nonzero(rng), e));
      const auto est = descent::asymptotic_valuation(u, m, 20, kFloor);
      REQUIRE(est.exact.has_value());
      CHECK(*est.exact == e);
      if (est.lower) CHECK(*est.lower <= e);
      CHECK(e <= est.upper);
    }
  }

  TEST_CASE("spectral radius from the characteristic polynomial") {
    const Manifold m(gallery::manifold_spec("cp1"));
    // Eigenvalues of multiplication by pt q t^{1/2} are +-t^{1/2} t^{-1/2}: valuation 0.
    CHECK(descent::spectral_radius_valuation(loops("cp1", m).front().element, m) == Rational(0));
    const auto scaled = qring::scale(QElement::unit(m), Scalar::monomial(3, Rational(2, 7)));
    CHECK(descent::spectral_radius_valuation(scaled, m) == Rational(2, 7));
  }

  TEST_CASE("growth table and diameter certificate") {
    const std::map<std::string, Rational> values{{"1", Rational(0)}, {"pt", Rational(-3)}};
    std::vector<Rational> grid;
    for (int s = 0; s < 10; ++s) grid.push_back(s);
    descent::DescentVerdict yes;
    yes.spectral = yes.asymptotic = Outcome::descend;
    std::optional<Rational> previous;
    for (int slope = 1; slope <= 4; ++slope) {
      const auto rows = descent::ostrover_growth(values, slope, grid);
      CHECK(rows.size() == 20);
      for (const auto& row : rows) CHECK(row.value == values.at(row.cls) + row.s * slope);
      const auto cert = descent::diameter_certificate(yes, rows);
      CHECK(cert.issued);
      CHECK(cert.slope == slope);
      if (previous) CHECK(cert.slope > *previous);
      previous = cert.slope;
    }
    descent::DescentVerdict no;
    no.spectral = no.asymptotic = Outcome::not_descend;
    CHECK_FALSE(descent::diameter_certificate(no, descent::ostrover_growth(values, 1, grid)).issued);
    CHECK_THROWS_AS(descent::ostrover_growth(values, 0, grid), Error);
  }
}
