#include "doctest.h"
#include "qhdescent/errors.hpp"
#include "support.hpp"

using namespace qhd;
using namespace qhd::testing;
using novikov::Term;
using novikov::Valuation;

TEST_SUITE("novikov") {
  TEST_CASE("rationals parse canonically and reject decimals") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-7")) == "-7");
    CHECK(to_string(parse_rational("0/5")) == "0");
    for (const char* bad : {"", "1.5", "1/0", "1e3", "/2", "2/", " 1", "--1"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(parse_rational(bad), Error);
    }
  }

  TEST_CASE("from_terms merges, sorts and drops zeros") {
    const auto s = Scalar::from_terms({{Rational(1), Rational(2)}, {Rational(3), Rational(1)}, {Rational(1), Rational(-2)},
                                       {Rational(-1), Rational(5)}});
    REQUIRE(s.terms().size() == 2);
    CHECK(s.terms()[0] == Term{Rational(3), Rational(1)});
    CHECK(s.terms()[1] == Term{Rational(-1), Rational(5)});
    CHECK(s.nu() == Valuation(Rational(3)));
    CHECK(Scalar().nu().is_bottom());
  }

  TEST_CASE("a floor drops terms at or below it") {
    const auto s = Scalar::from_terms({{Rational(2), Rational(1)}, {Rational(-1), Rational(1)}}, Rational(-1));
    REQUIRE(s.terms().size() == 1);
    CHECK_FALSE(s.is_exact());
    CHECK(s.certain_nu() == Valuation(Rational(2)));
    const auto empty = Scalar::from_terms({{Rational(-3), Rational(1)}}, Rational(0));
    CHECK_FALSE(empty.certain_nu().has_value());
    CHECK_FALSE(empty.is_zero());
  }

  TEST_CASE("sums and products match the dense oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const Scalar a = random_scalar(rng), b = random_scalar(rng);
      CHECK(dense(a + b) == dense_add(dense(a), dense(b)));
      CHECK(dense(a * b) == dense_mul(dense(a), dense(b)));
      CHECK(dense(a - a).empty());
    }
  }

  TEST_CASE("valuation axioms on exact scalars") {
    Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
      const Scalar a = random_scalar(rng), b = random_scalar(rng);
      CHECK(((a * b).nu() == a.nu() + b.nu()));
      const auto sum = (a + b).nu();
      CHECK((sum <= std::max(a.nu(), b.nu())));
    }
  }

  TEST_CASE("monomials invert exactly") {
    const Scalar a = Scalar::monomial(Rational(-3, 2), Rational(5, 7));
    const Scalar inv = novikov::invert(a);
    CHECK(inv.is_exact());
    CHECK(a * inv == Scalar::one());
  }

  TEST_CASE("series inverses agree with 1 above the floor") {
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      const Scalar a = random_scalar(rng);
      const Rational target = -a.nu().value() - 8;
      const Scalar inv = novikov::invert(a, target);
      CHECK(inv.nu() == Valuation(-a.nu().value()));
      const Scalar product = a * inv;
      if (product.floor())
        CHECK(novikov::agree_above(product, Scalar::one(), *product.floor()));
      else
        CHECK(product == Scalar::one());
    }
  }

  TEST_CASE("inverting zero or an uninformative scalar fails") {
    CHECK_THROWS_AS(novikov::invert(Scalar()), Error);
    CHECK_THROWS_AS(novikov::invert(Scalar::from_terms({}, Rational(0))), Error);
    CHECK_THROWS_AS(novikov::invert(Scalar::from_terms({{Rational(0), Rational(1)}, {Rational(-1), Rational(1)}})), Error);
  }

  TEST_CASE("truncated operands stay correct above the propagated floor") {
    Rng rng(14);
    for (int trial = 0; trial < 200; ++trial) {
      const Scalar a = random_scalar(rng), b = random_scalar(rng);
      const Scalar ta = novikov::truncate(a, random_rational(rng, 4));
      const Scalar tb = novikov::truncate(b, random_rational(rng, 4));
      const Scalar prod = ta * tb;
      if (prod.floor()) CHECK(novikov::agree_above(prod, a * b, *prod.floor()));
      const Scalar sum = ta + tb;
      if (sum.floor()) CHECK(novikov::agree_above(sum, a + b, *sum.floor()));
    }
  }

  TEST_CASE("shift and scale act on exponents and coefficients") {
    const Scalar a = Scalar::from_terms({{Rational(1), Rational(2)}, {Rational(0), Rational(3)}});
    const Scalar s = novikov::shift(novikov::scale(a, Rational(1, 2)), Rational(-1));
    CHECK(dense(s) == Dense{{Rational(0), Rational(1)}, {Rational(-1), Rational(3, 2)}});
  }
}
