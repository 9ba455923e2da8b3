#include <fstream>
#include <string>

#include "doctest.h"
#include "qhdescent/bundled.hpp"
#include "qhdescent/errors.hpp"
#include "qhdescent/io.hpp"
#include "support.hpp"

using namespace qhd;
using namespace qhd::testing;
using io::Json;

namespace {

std::string data_path(const std::string& rel) { return std::string(QHD_DATA_DIR) + "/" + rel; }

std::string parse_error(const std::string& text) {
  try {
    io::parse(text, "input.json");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("scalars round-trip") {
    Rng rng(61);
    for (int trial = 0; trial < 100; ++trial) {
      Scalar s = random_scalar(rng);
      if (trial % 3 == 0) s = novikov::truncate(s, random_rational(rng, 4));
      CHECK(io::scalar_from_json(io::to_json(s)) == s);
      CHECK(io::scalar_from_json(io::parse(io::to_json(s).dump(), "x")) == s);
    }
  }

  TEST_CASE("rationals must be strings or integers") {
    CHECK(io::rational_from_json(Json("3/6"), "x") == Rational(1, 2));
    CHECK(io::rational_from_json(Json(4), "x") == 4);
    CHECK_THROWS_AS(io::rational_from_json(Json(0.5), "x"), Error);
    CHECK_THROWS_AS(io::rational_from_json(Json("0.5"), "x"), Error);
  }

  TEST_CASE("parse errors carry line and column") {
    const auto message = parse_error("{\n  \"a\": 1,\n  oops\n}");
    CHECK(message.find("input.json:3:") != std::string::npos);
  }

  TEST_CASE("data files equal the built-in gallery") {
    for (const auto& name : gallery::manifold_names()) {
      CAPTURE(name);
      const auto loaded = io::load_file(data_path(name + ".json"));
      if (loaded.contains("sections")) continue;  // fibration files, checked below
      CHECK(loaded == io::to_json(gallery::manifold_spec(name)));
    }
    for (const auto& name : bundled::fibration_names()) {
      CAPTURE(name);
      CHECK(io::load_file(data_path(name + ".json")) == io::to_json(bundled::fibration_spec(name)));
    }
    for (const auto& name : {"cp1", "cp2", "s2xs2", "blowup_cp2", "blowup_t4", "t2"}) {
      CAPTURE(name);
      const Manifold m(gallery::manifold_spec(name));
      CHECK(io::load_file(data_path(std::string("elements/") + name + ".json")) ==
            io::to_json(bundled::loop_elements(name, m), m));
    }
    const auto complex = bundled::torus_complex();
    CHECK(io::load_file(data_path("torus_complex.json")) == io::to_json(complex));
  }

  TEST_CASE("manifolds, elements, complexes and fibrations round-trip") {
    for (const auto& name : gallery::manifold_names()) {
      CAPTURE(name);
      const auto spec = gallery::manifold_spec(name);
      const Json j = io::to_json(spec);
      CHECK(io::to_json(io::manifold_from_json(j)) == j);
      const Manifold m(spec);
      Rng rng(62);
      const auto a = random_element(rng, m);
      CHECK(io::element_from_json(io::to_json(a, m), m) == a);
    }
    for (const auto& name : bundled::fibration_names()) {
      const Json j = io::to_json(bundled::fibration_spec(name));
      CHECK(io::to_json(io::fibration_from_json(j)) == j);
    }
    const auto c = bundled::torus_complex();
    CHECK(io::to_json(io::complex_from_json(io::to_json(c))) == io::to_json(c));
    const auto cycles = io::cycles_from_json(io::load_file(data_path("torus_cycles.json")), c);
    REQUIRE(cycles.size() == 2);
    CHECK(cycles[0].cls == "1");
    CHECK(cycles[0].cycle == morse::Chain{{c.index_of("min"), Rational(1)}});
  }

  TEST_CASE("schema violations name the broken field") {
    Json j = io::to_json(gallery::cp2_spec());
    j.erase("basis");
    CHECK_THROWS_AS(io::manifold_from_json(j), Error);
    const Manifold m(gallery::cp2_spec());
    const Json unknown = Json::parse(R"([{"class": "Q", "qpow": 0, "scalar": [{"eps": "0", "coef": "1"}]}])");
    CHECK_THROWS_AS(io::element_from_json(unknown, m), Error);
    const Json by_index = Json::parse(R"([{"class": 1, "qpow": 0, "scalar": [{"eps": "0", "coef": "1"}]}])");
    CHECK(io::element_from_json(by_index, m) == QElement::basis(1));
  }

  TEST_CASE("missing files are reported") {
    CHECK_THROWS_AS(io::load_file(data_path("does_not_exist.json")), Error);
  }
}
