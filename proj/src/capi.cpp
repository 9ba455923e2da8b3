#include "qhdescent/qhdescent.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "qhdescent/bundled.hpp"
#include "qhdescent/errors.hpp"
#include "qhdescent/fibration.hpp"
#include "qhdescent/gallery.hpp"
#include "qhdescent/io.hpp"
#include "qhdescent/report.hpp"

struct qhd_manifold {
  qhd::qring::Manifold value;
};
struct qhd_fibration {
  qhd::fibration::Fibration value;
};
struct qhd_complex {
  qhd::morse::FiltrationComplex value;
};

namespace {

using qhd::ErrorKind;
using qhd::io::Json;

thread_local std::string last_error;

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

qhd_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse: return QHD_ERR_PARSE;
    case ErrorKind::schema: return QHD_ERR_SCHEMA;
    case ErrorKind::precondition: return QHD_ERR_PRECONDITION;
    case ErrorKind::not_invertible: return QHD_ERR_NOT_INVERTIBLE;
    case ErrorKind::unsupported: return QHD_ERR_UNSUPPORTED;
    case ErrorKind::internal: return QHD_ERR_INTERNAL;
  }
  return QHD_ERR_INTERNAL;
}

template <class F>
qhd_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return QHD_OK;
  } catch (const qhd::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return QHD_ERR_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("schema: ") + e.what();
    return QHD_ERR_SCHEMA;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QHD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal: ") + e.what();
    return QHD_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string("null argument: ") + what);
}

Json document(const char* doc, const char* what) {
  require(doc, what);
  if (doc[0] == '@') return qhd::io::load_file(doc + 1);
  return qhd::io::parse(doc, what);
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) { *out = copy_out(j.dump(2)); }

qhd::Rational rational_arg(const char* text, const char* fallback, const char* what) {
  try {
    return qhd::parse_rational(text != nullptr ? text : fallback);
  } catch (const qhd::Error& e) {
    qhd::fail(ErrorKind::parse, std::string(what) + ": " + e.what());
  }
}

qhd::report::Options options(const qhd_options* opt) {
  qhd::report::Options o;
  if (opt == nullptr) return o;
  if (opt->k_max != 0) o.k_max = opt->k_max;
  if (o.k_max < 1) qhd::fail(ErrorKind::precondition, "k_max must be positive");
  o.floor = rational_arg(opt->floor, "-100", "floor");
  o.delta = rational_arg(opt->delta, "1/10", "delta");
  return o;
}

std::vector<qhd::seidel::SeidelElement> elements(const qhd_manifold* m, const char* doc) {
  require(m, "manifold");
  return qhd::io::elements_from_json(document(doc, "elements"), m->value);
}

// Elements without the degree and invertibility checks of Seidel elements.
std::vector<qhd::seidel::SeidelElement> plain_elements(const qhd_manifold* m, const char* doc) {
  require(m, "manifold");
  const Json j = document(doc, "elements");
  const Json& list = j.is_object() ? j.at("elements") : j;
  if (!list.is_array()) qhd::fail(ErrorKind::schema, "elements: expected a list of {\"label\", \"terms\"}");
  std::vector<qhd::seidel::SeidelElement> out;
  for (const auto& e : list) {
    const std::string label = e.contains("label") ? e.at("label").get<std::string>() : "S" + std::to_string(out.size() + 1);
    out.push_back({qhd::io::element_from_json(e.at("terms"), m->value), label});
  }
  return out;
}

}  // namespace

extern "C" {

const char* qhd_version(void) { return "0.1.0"; }

const char* qhd_last_error(void) { return last_error.c_str(); }

void qhd_string_free(char* s) { std::free(s); }

const char* qhd_status_name(qhd_status status) {
  switch (status) {
    case QHD_OK: return "ok";
    case QHD_ERR_PARSE: return "parse error";
    case QHD_ERR_SCHEMA: return "schema error";
    case QHD_ERR_PRECONDITION: return "precondition violated";
    case QHD_ERR_NOT_INVERTIBLE: return "not invertible";
    case QHD_ERR_UNSUPPORTED: return "unsupported";
    case QHD_ERR_ARGUMENT: return "invalid argument";
    case QHD_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

qhd_status qhd_manifold_load(const char* doc, qhd_manifold** out) {
  return guard([&] {
    require(out, "out");
    *out = new qhd_manifold{qhd::qring::Manifold(qhd::io::manifold_from_json(document(doc, "manifold")))};
  });
}

qhd_status qhd_manifold_bundled(const char* name, const char* delta, qhd_manifold** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const auto d = rational_arg(delta, "1/10", "delta");
    *out = new qhd_manifold{qhd::qring::Manifold(qhd::gallery::manifold_spec(name, d))};
  });
}

qhd_status qhd_manifold_to_json(const qhd_manifold* m, char** out) {
  return guard([&] {
    require(m, "manifold");
    require(out, "out");
    emit(qhd::io::to_json(m->value.spec()), out);
  });
}

void qhd_manifold_free(qhd_manifold* m) { delete m; }

qhd_status qhd_fibration_load(const char* doc, qhd_fibration** out) {
  return guard([&] {
    require(out, "out");
    *out = new qhd_fibration{qhd::fibration::Fibration(qhd::io::fibration_from_json(document(doc, "fibration")))};
  });
}

qhd_status qhd_fibration_bundled(const char* name, const char* delta, qhd_fibration** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const auto d = rational_arg(delta, "1/10", "delta");
    *out = new qhd_fibration{qhd::fibration::Fibration(qhd::bundled::fibration_spec(name, d))};
  });
}

qhd_status qhd_fibration_product(const qhd_manifold* fiber, qhd_fibration** out) {
  return guard([&] {
    require(fiber, "fiber");
    require(out, "out");
    *out = new qhd_fibration{qhd::fibration::Fibration(qhd::fibration::product_fibration(fiber->value.spec()))};
  });
}

qhd_status qhd_fibration_to_json(const qhd_fibration* f, char** out) {
  return guard([&] {
    require(f, "fibration");
    require(out, "out");
    emit(qhd::io::to_json(f->value.spec()), out);
  });
}

void qhd_fibration_free(qhd_fibration* f) { delete f; }

qhd_status qhd_complex_load(const char* doc, qhd_complex** out) {
  return guard([&] {
    require(out, "out");
    *out = new qhd_complex{qhd::io::complex_from_json(document(doc, "complex"))};
  });
}

void qhd_complex_free(qhd_complex* c) { delete c; }

qhd_status qhd_bundled_document(const char* name, const char* delta, char** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const auto d = rational_arg(delta, "1/10", "delta");
    const std::string full(name);
    const auto colon = full.find(':');
    const std::string kind = full.substr(0, colon);
    const std::string item = colon == std::string::npos ? std::string() : full.substr(colon + 1);
    if (kind == "manifold") {
      emit(qhd::io::to_json(qhd::gallery::manifold_spec(item, d)), out);
    } else if (kind == "fibration") {
      emit(qhd::io::to_json(qhd::bundled::fibration_spec(item, d)), out);
    } else if (kind == "elements") {
      const qhd::qring::Manifold m(qhd::gallery::manifold_spec(item, d));
      emit(qhd::io::to_json(qhd::bundled::loop_elements(item, m, d), m), out);
    } else if (kind == "complex" && item == "torus") {
      emit(qhd::io::to_json(qhd::bundled::torus_complex()), out);
    } else if (kind == "cycles" && item == "torus") {
      const auto c = qhd::bundled::torus_complex();
      Json cycles = Json::array();
      for (const auto& nc : qhd::bundled::torus_cycles(c))
        cycles.push_back({{"class", nc.cls}, {"cycle", qhd::io::to_json(nc.cycle, c)}});
      emit(Json{{"cycles", cycles}}, out);
    } else {
      qhd::fail(ErrorKind::precondition, "unknown bundled document \"" + full + "\"");
    }
  });
}

qhd_status qhd_report_nu(const char* scalar_doc, char** out) {
  return guard([&] {
    require(out, "out");
    emit(qhd::report::nu_report(qhd::io::scalar_from_json(document(scalar_doc, "scalar"))), out);
  });
}

qhd_status qhd_report_element_nu(const qhd_manifold* m, const char* elements_doc, char** out) {
  return guard([&] {
    require(out, "out");
    emit(qhd::report::element_nu_report(plain_elements(m, elements_doc), m->value), out);
  });
}

qhd_status qhd_report_product(const qhd_manifold* m, const char* elements_doc, char** out) {
  return guard([&] {
    require(out, "out");
    const auto es = plain_elements(m, elements_doc);
    if (es.size() < 2) qhd::fail(ErrorKind::precondition, "product needs two elements");
    emit(qhd::report::product_report(es[0].element, es[1].element, m->value), out);
  });
}

qhd_status qhd_report_invert(const qhd_manifold* m, const char* elements_doc, const qhd_options* opt, char** out) {
  return guard([&] {
    require(out, "out");
    emit(qhd::report::invert_report(elements(m, elements_doc), m->value, options(opt)), out);
  });
}

qhd_status qhd_report_classify(const qhd_manifold* m, const char* elements_doc, char** out) {
  return guard([&] {
    require(out, "out");
    emit(qhd::report::classify_report(elements(m, elements_doc), m->value), out);
  });
}

qhd_status qhd_report_descent(const qhd_manifold* m, const char* elements_doc, const qhd_options* opt, char** out) {
  return guard([&] {
    require(out, "out");
    emit(qhd::report::descent_report(elements(m, elements_doc), m->value, options(opt)), out);
  });
}

qhd_status qhd_report_asymptotic(const qhd_manifold* m, const char* elements_doc, const qhd_options* opt,
                                 char** out) {
  return guard([&] {
    require(out, "out");
    emit(qhd::report::asymptotic_report(elements(m, elements_doc), m->value, options(opt)), out);
  });
}

qhd_status qhd_report_morse(const qhd_complex* c, const char* cycle_doc, int negate, char** out) {
  return guard([&] {
    require(c, "complex");
    require(out, "out");
    const auto cycle = qhd::io::cycle_from_json(document(cycle_doc, "cycle"), c->value);
    emit(qhd::report::morse_report(c->value, cycle, negate != 0), out);
  });
}

qhd_status qhd_report_ostrover(const qhd_complex* c, const char* cycles_doc, const char* slope, int grid_size,
                               const qhd_manifold* m, const char* elements_doc, const qhd_options* opt, char** out) {
  return guard([&] {
    require(c, "complex");
    require(slope, "slope");
    require(out, "out");
    if (grid_size < 2) qhd::fail(ErrorKind::precondition, "the s-grid needs at least two points");
    if ((m == nullptr) != (elements_doc == nullptr))
      qhd::fail(ErrorKind::precondition, "a loop needs both a manifold and elements");
    const auto cycles = qhd::io::cycles_from_json(document(cycles_doc, "cycles"), c->value);
    std::vector<qhd::Rational> grid;
    for (int s = 0; s < grid_size; ++s) grid.emplace_back(s);
    std::optional<qhd::report::LoopData> loop;
    if (m != nullptr) loop = qhd::report::LoopData{&m->value, elements(m, elements_doc)};
    emit(qhd::report::ostrover_report(c->value, cycles, rational_arg(slope, "0", "slope"), grid, loop, options(opt)),
         out);
  });
}

qhd_status qhd_report_fibration(const qhd_fibration* f, char** out) {
  return guard([&] {
    require(f, "fibration");
    require(out, "out");
    emit(qhd::report::fibration_report(f->value), out);
  });
}

qhd_status qhd_report_example(const char* name, const qhd_options* opt, char** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    const std::string n(name);
    emit(n == "all" ? qhd::report::all_examples_report(options(opt)) : qhd::report::example_report(n, options(opt)),
         out);
  });
}

qhd_status qhd_example_names(char** out) {
  return guard([&] {
    require(out, "out");
    std::string names;
    for (const auto& n : qhd::report::example_names()) names += n + "\n";
    *out = copy_out(names);
  });
}

qhd_status qhd_report_render_text(const char* report_json, char** out) {
  return guard([&] {
    require(out, "out");
    *out = copy_out(qhd::report::render_text(document(report_json, "report")));
  });
}

int qhd_report_exit_code(const char* report_json) {
  int code = -1;
  const qhd_status s = guard([&] {
    const Json r = document(report_json, "report");
    code = qhd::report::exit_code(r.at("outcome").get<std::string>());
  });
  return s == QHD_OK ? code : -1;
}

}  // extern "C"
