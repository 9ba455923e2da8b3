#include <functional>
#include <set>

#include "doctest.h"
#include "qhdescent/bundled.hpp"
#include "qhdescent/errors.hpp"
#include "support.hpp"

using namespace qhd;
using namespace qhd::testing;
using fibration::Fibration;
using fibration::FibrationSpec;

namespace {

// Names of the checks that fail on the mutated spec; "constructor" when loading refuses it.
std::set<std::string> failing_checks(FibrationSpec spec) {
  std::set<std::string> failed;
  try {
    const Fibration f(std::move(spec));
    for (const auto& r : fibration::check_all(f))
      if (!r.passed) failed.insert(r.name);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::schema) throw;
    failed.insert("constructor");
  }
  return failed;
}

fibration::PEntry& find_entry(FibrationSpec& spec, const Fibration& f, int mult, const std::vector<std::string>& names) {
  std::vector<int> classes;
  for (const auto& n : names) classes.push_back(f.index_of(n));
  for (auto& e : spec.invariants)
    if (e.alpha.mult == mult && e.classes == classes) return e;
  FAIL("entry not found");
  throw;
}

}  // namespace

TEST_SUITE("fibration") {
  TEST_CASE("bundled fibrations pass every check") {
    for (const auto& name : bundled::fibration_names()) {
      CAPTURE(name);
      const Fibration f(bundled::fibration_spec(name));
      const auto reports = fibration::check_all(f);
      CHECK(reports.size() == 5);
      for (const auto& r : reports) {
        CAPTURE(r.name);
        CHECK(r.passed);
        CHECK(r.violations.empty());
      }
    }
  }

  TEST_CASE("section tables reproduce the Seidel element") {
    for (const char* name : {"blowup_cp2", "blowup_t4"}) {
      CAPTURE(name);
      const Fibration f(bundled::fibration_spec(name));
      const auto loop = bundled::loop_elements(name, f.fiber()).front();
      const auto s = seidel::seidel_from_table(f.section_table(), f.fiber(), "s");
      CHECK(s.element == loop.element);
    }
    for (const char* name : {"cp1_x_s2", "cp2_x_s2", "s2xs2_x_s2"}) {
      CAPTURE(name);
      const Fibration f(bundled::fibration_spec(name));
      const auto s = seidel::seidel_from_table(f.section_table(), f.fiber(), "s");
      CHECK(s.element == QElement::unit(f.fiber()));
    }
  }

  TEST_CASE("one corruption per check is caught") {
    const auto base = bundled::fibration_spec("cp2_x_s2");
    const Fibration f(base);
    REQUIRE(failing_checks(base).empty());

    SUBCASE("divisor axiom") {
      auto spec = base;
      find_entry(spec, f, 1, {"pt"}).value += 1;
      CHECK(failing_checks(spec).count("divisor_axiom") == 1);
    }
    SUBCASE("splitting identity") {
      auto spec = base;
      find_entry(spec, f, 1, {"L", "L"}).value += 1;
      CHECK(failing_checks(spec).count("lee_pandharipande") == 1);
    }
    SUBCASE("fiber reduction") {
      auto spec = base;
      find_entry(spec, f, 0, {"L", "1*", "1*"}).value += 1;
      CHECK(failing_checks(spec).count("fiber_reduction") == 1);
    }
    SUBCASE("dimension") {
      auto spec = base;
      spec.invariants.push_back({{1, {1}}, {f.index_of("pt")}, Rational(1)});
      CHECK(failing_checks(spec).count("dimension") == 1);
    }
    SUBCASE("pairing") {
      auto spec = base;
      for (auto& p : spec.p_intersection)
        if (p.i == f.index_of("1*") && p.j == f.index_of("1*")) p.result = {{f.index_of("pt"), Rational(1)}};
      const auto failed = failing_checks(spec);
      CHECK((failed.count("constructor") == 1 || failed.count("pairing") == 1));
    }
  }

  TEST_CASE("the splitting identity refuses classes that meet H") {
    const Fibration f(bundled::fibration_spec("cp2_x_s2"));
    fibration::LPInstance inst;
    inst.h = {{f.index_of("L*"), Rational(1)}};
    inst.u = f.index_of("pt");
    inst.v = f.index_of("L");
    inst.w = f.index_of("1*");
    inst.alpha = {0, {1}};
    CHECK_THROWS_AS(fibration::lp_residual(inst, f), Error);
  }

  TEST_CASE("product fibrations: normalization and coupling") {
    const Fibration f(bundled::fibration_spec("cp2_x_s2"));
    fibration::Warnings w;
    CHECK(f.gw({1, {0}}, {f.index_of("pt"), f.index_of("1")}, &w) == 1);
    const auto cert = fibration::coupling_certificate(f, {{f.index_of("L*"), Rational(1)}});
    CHECK(cert.status == fibration::CouplingStatus::certified);
    const auto wrong = fibration::coupling_certificate(f, {{f.index_of("L*"), Rational(2)}});
    CHECK(wrong.status == fibration::CouplingStatus::fails);
  }

  TEST_CASE("the lifted basis pairs dually with the fiber basis") {
    const Fibration f(bundled::fibration_spec("s2xs2_x_s2"));
    for (int i = 0; i < f.size(); ++i)
      for (int j = 0; j < f.size(); ++j) {
        const Rational expected = f.dual(i) == j ? 1 : 0;
        CHECK(f.pairing({{i, Rational(1)}}, {{j, Rational(1)}}) == expected);
      }
  }
}
