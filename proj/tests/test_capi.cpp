#include <memory>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qhdescent/qhdescent.h"

namespace {

using Json = nlohmann::ordered_json;

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  qhd_string_free(s);
  return out;
}

struct ManifoldHandle {
  qhd_manifold* ptr = nullptr;
  ~ManifoldHandle() { qhd_manifold_free(ptr); }
};

std::string data(const std::string& rel) { return "@" + std::string(QHD_DATA_DIR) + "/" + rel; }

std::string text_of(const std::string& report) {
  char* text = nullptr;
  REQUIRE(qhd_report_render_text(report.c_str(), &text) == QHD_OK);
  return take(text);
}

// Every summary line of the JSON report appears in its text rendering.
void check_text_matches(const std::string& report) {
  const auto j = Json::parse(report);
  const auto text = text_of(report);
  for (const auto& line : j["summary"]) CHECK(text.find(line.get<std::string>()) != std::string::npos);
  CHECK(Json::parse(j.dump()) == j);
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("scalar valuation") {
    char* out = nullptr;
    REQUIRE(qhd_report_nu(R"([{"eps":"1/2","coef":"3"}])", &out) == QHD_OK);
    const auto report = take(out);
    CHECK(qhd_report_exit_code(report.c_str()) == 0);
    CHECK(text_of(report).find("1/2") != std::string::npos);
    check_text_matches(report);
  }

  TEST_CASE("documents load from files") {
    ManifoldHandle m;
    REQUIRE(qhd_manifold_load(data("cp2.json").c_str(), &m.ptr) == QHD_OK);
    char* out = nullptr;
    REQUIRE(qhd_report_descent(m.ptr, data("elements/cp2.json").c_str(), nullptr, &out) == QHD_OK);
    const auto report = take(out);
    CHECK(Json::parse(report)["outcome"] == "descend");
    CHECK(qhd_report_exit_code(report.c_str()) == 0);
    check_text_matches(report);
  }

  TEST_CASE("input errors map to status codes") {
    ManifoldHandle m;
    CHECK(qhd_manifold_load("{\n  \"name\": \n}", &m.ptr) == QHD_ERR_PARSE);
    CHECK(std::string(qhd_last_error()).find("manifold:3:") != std::string::npos);
    CHECK(qhd_manifold_load(nullptr, &m.ptr) == QHD_ERR_ARGUMENT);
    CHECK(qhd_manifold_load(R"({"name": "x", "n": 1.5})", &m.ptr) != QHD_OK);
    CHECK(qhd_manifold_bundled("no_such_manifold", nullptr, &m.ptr) == QHD_ERR_PRECONDITION);
    REQUIRE(qhd_manifold_bundled("cp2", nullptr, &m.ptr) == QHD_OK);
    char* out = nullptr;
    const char* wrong_degree = R"([{"label": "x", "terms": [{"class": "pt", "qpow": 0, "scalar": [{"eps": "0", "coef": "1"}]}]}])";
    CHECK(qhd_report_descent(m.ptr, wrong_degree, nullptr, &out) == QHD_ERR_PRECONDITION);
    CHECK(out == nullptr);
    const char* singular = R"([{"label": "x", "terms": []}])";
    CHECK(qhd_report_classify(m.ptr, singular, &out) != QHD_OK);
    CHECK(qhd_report_exit_code("{") == -1);
    CHECK(qhd_report_exit_code(R"({"outcome": "maybe"})") == -1);
  }

  TEST_CASE("gallery scenarios and their exit codes") {
    const qhd_options opt{0, nullptr, "1/10"};
    char* out = nullptr;
    REQUIRE(qhd_report_example("blowup-cp2", &opt, &out) == QHD_OK);
    auto report = take(out);
    CHECK(qhd_report_exit_code(report.c_str()) == 1);
    CHECK(text_of(report).find("asymptotic: not_descend, \xce\xba = -1/110") != std::string::npos);
    check_text_matches(report);

    REQUIRE(qhd_report_example("blowup-t4", &opt, &out) == QHD_OK);
    report = take(out);
    CHECK(qhd_report_exit_code(report.c_str()) == 0);
    CHECK(text_of(report).find("asymptotic: descend") != std::string::npos);

    REQUIRE(qhd_report_example("torus-morse", nullptr, &out) == QHD_OK);
    report = take(out);
    CHECK(qhd_report_exit_code(report.c_str()) == 0);
    CHECK(Json::parse(report)["data"]["certificate"]["issued"] == true);

    CHECK(qhd_report_example("nonexistent", nullptr, &out) == QHD_ERR_PRECONDITION);
    REQUIRE(qhd_example_names(&out) == QHD_OK);
    CHECK(take(out).find("torus-morse") != std::string::npos);
  }

  TEST_CASE("bundled documents reload") {
    char* doc = nullptr;
    REQUIRE(qhd_bundled_document("fibration:blowup_cp2", nullptr, &doc) == QHD_OK);
    const auto text = take(doc);
    qhd_fibration* f = nullptr;
    REQUIRE(qhd_fibration_load(text.c_str(), &f) == QHD_OK);
    char* out = nullptr;
    REQUIRE(qhd_report_fibration(f, &out) == QHD_OK);
    CHECK(qhd_report_exit_code(take(out).c_str()) == 0);
    REQUIRE(qhd_fibration_to_json(f, &out) == QHD_OK);
    CHECK(Json::parse(take(out)) == Json::parse(text));
    qhd_fibration_free(f);
  }
}
