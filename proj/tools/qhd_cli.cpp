// Command-line front end over the qhdescent C interface.
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qhdescent/qhdescent.h"

namespace {

constexpr int kInputError = 2;
constexpr int kInternalError = 4;

struct Flags {
  std::string manifold;
  std::string fibration;
  std::string elements;
  std::string complex;
  std::string cycle;
  std::string scalar;
  std::string delta;
  std::string floor;
  std::string slope = "1";
  std::string action;
  std::string example;
  int kmax = 0;
  int grid = 10;
  bool json = false;
  bool all = false;
  bool negate = false;
};

// Raised when the library rejects an input; carries the status.
struct Failure {
  qhd_status status;
};

void check(qhd_status s) {
  if (s != QHD_OK) throw Failure{s};
}

using String = std::unique_ptr<char, decltype(&qhd_string_free)>;
String adopt(char* s) { return String(s, &qhd_string_free); }

// Library documents are JSON text or "@path".
std::string file_doc(const std::string& path) { return "@" + path; }
std::string inline_or_file(const std::string& text) {
  return !text.empty() && (text.front() == '[' || text.front() == '{' || text.front() == '@') ? text : file_doc(text);
}

using Manifold = std::unique_ptr<qhd_manifold, decltype(&qhd_manifold_free)>;

Manifold load_manifold(const Flags& f) {
  if (f.manifold.empty()) {
    std::cerr << "error: --manifold is required\n";
    throw Failure{QHD_ERR_ARGUMENT};
  }
  qhd_manifold* m = nullptr;
  if (std::filesystem::exists(f.manifold))
    check(qhd_manifold_load(file_doc(f.manifold).c_str(), &m));
  else
    check(qhd_manifold_bundled(f.manifold.c_str(), f.delta.empty() ? nullptr : f.delta.c_str(), &m));
  return Manifold(m, &qhd_manifold_free);
}

std::string required(const std::string& value, const char* flag) {
  if (value.empty()) {
    std::cerr << "error: " << flag << " is required\n";
    throw Failure{QHD_ERR_ARGUMENT};
  }
  return value;
}

qhd_options options(const Flags& f) {
  return {f.kmax, f.floor.empty() ? nullptr : f.floor.c_str(), f.delta.empty() ? nullptr : f.delta.c_str()};
}

using Complex = std::unique_ptr<qhd_complex, decltype(&qhd_complex_free)>;
Complex load_complex(const Flags& f) {
  qhd_complex* c = nullptr;
  check(qhd_complex_load(file_doc(required(f.complex, "--complex")).c_str(), &c));
  return Complex(c, &qhd_complex_free);
}

char* run_verb(const std::string& verb, const Flags& f) {
  char* out = nullptr;
  const qhd_options opt = options(f);
  if (verb == "nu") {
    if (!f.scalar.empty()) {
      check(qhd_report_nu(inline_or_file(f.scalar).c_str(), &out));
    } else {
      const auto m = load_manifold(f);
      check(qhd_report_element_nu(m.get(), file_doc(required(f.elements, "--elements")).c_str(), &out));
    }
  } else if (verb == "product") {
    const auto m = load_manifold(f);
    check(qhd_report_product(m.get(), inline_or_file(required(f.elements, "--elements")).c_str(), &out));
  } else if (verb == "invert") {
    const auto m = load_manifold(f);
    check(qhd_report_invert(m.get(), inline_or_file(required(f.elements, "--elements")).c_str(), &opt, &out));
  } else if (verb == "classify") {
    const auto m = load_manifold(f);
    check(qhd_report_classify(m.get(), inline_or_file(required(f.elements, "--elements")).c_str(), &out));
  } else if (verb == "descent") {
    const auto m = load_manifold(f);
    check(qhd_report_descent(m.get(), inline_or_file(required(f.elements, "--elements")).c_str(), &opt, &out));
  } else if (verb == "asymptotic") {
    const auto m = load_manifold(f);
    check(qhd_report_asymptotic(m.get(), inline_or_file(required(f.elements, "--elements")).c_str(), &opt, &out));
  } else if (verb == "morse") {
    const auto c = load_complex(f);
    check(qhd_report_morse(c.get(), inline_or_file(required(f.cycle, "--cycle")).c_str(), f.negate ? 1 : 0, &out));
  } else if (verb == "ostrover") {
    const auto c = load_complex(f);
    std::optional<Manifold> m;
    std::string elements;
    if (!f.manifold.empty()) {
      m.emplace(load_manifold(f));
      elements = inline_or_file(required(f.elements, "--elements"));
    }
    check(qhd_report_ostrover(c.get(), inline_or_file(required(f.cycle, "--cycle")).c_str(), f.slope.c_str(), f.grid,
                              m ? m->get() : nullptr, m ? elements.c_str() : nullptr, &opt, &out));
  } else if (verb == "fibration-check") {
    qhd_fibration* fib = nullptr;
    if (!f.fibration.empty() && !std::filesystem::exists(f.fibration)) {
      check(qhd_fibration_bundled(f.fibration.c_str(), f.delta.empty() ? nullptr : f.delta.c_str(), &fib));
    } else if (!f.fibration.empty()) {
      check(qhd_fibration_load(file_doc(f.fibration).c_str(), &fib));
    } else {
      const auto m = load_manifold(f);
      check(qhd_fibration_product(m.get(), &fib));
    }
    const std::unique_ptr<qhd_fibration, decltype(&qhd_fibration_free)> owned(fib, &qhd_fibration_free);
    check(qhd_report_fibration(fib, &out));
  } else if (verb == "examples") {
    if (!f.all && f.example.empty()) {
      char* names = nullptr;
      check(qhd_example_names(&names));
      std::cerr << "error: name an example or pass --all; available:\n" << adopt(names).get();
      throw Failure{QHD_ERR_ARGUMENT};
    }
    check(qhd_report_example(f.all ? "all" : f.example.c_str(), &opt, &out));
  }
  return out;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_flag("--json", f.json, "Print the JSON report");
  cmd->add_option("--kmax", f.kmax, "Largest power examined (default 50)")->check(CLI::PositiveNumber);
  cmd->add_option("--floor", f.floor, "Truncation floor as a rational (default -100)");
  cmd->add_option("--delta", f.delta, "Blow-up size as a rational (default 1/10)");
}

void add_manifold(CLI::App* cmd, Flags& f) {
  cmd->add_option("--manifold", f.manifold, "Manifold JSON file or bundled name");
  cmd->add_option("--elements", f.elements, "Elements JSON file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact quantum homology, Seidel elements and spectral descent"};
  app.require_subcommand(1);
  app.set_version_flag("--version", qhd_version());
  Flags f;

  auto* nu = app.add_subcommand("nu", "Valuation of a scalar or of elements");
  nu->add_option("--scalar", f.scalar, "Scalar as inline JSON or a file");
  add_manifold(nu, f);
  add_common(nu, f);

  auto* product = app.add_subcommand("product", "Quantum and classical product of the first two elements");
  add_manifold(product, f);
  add_common(product, f);

  auto* invert = app.add_subcommand("invert", "Invert units above the floor");
  add_manifold(invert, f);
  add_common(invert, f);

  auto* classify = app.add_subcommand("classify", "Check Seidel elements against the structural cases");
  add_manifold(classify, f);
  add_common(classify, f);

  auto* descent = app.add_subcommand("descent", "Decide both descent criteria");
  descent->add_option("action", f.action, "Optional: check")->check(CLI::IsMember({"check"}));
  add_manifold(descent, f);
  add_common(descent, f);

  auto* asymptotic = app.add_subcommand("asymptotic", "Asymptotic valuations and the asymptotic criterion");
  add_manifold(asymptotic, f);
  add_common(asymptotic, f);

  auto* morse = app.add_subcommand("morse", "Spectral number of a cycle in a filtered Morse complex");
  morse->add_option("action", f.action, "Optional: spectral")->check(CLI::IsMember({"spectral"}));
  morse->add_option("--complex", f.complex, "Complex JSON file");
  morse->add_option("--cycle", f.cycle, "Cycle JSON file");
  morse->add_flag("--negate", f.negate, "Cycle of the complex of -H; report c(a, phi^H)");
  add_common(morse, f);

  auto* ostrover = app.add_subcommand("ostrover", "Growth table and diameter certificate");
  ostrover->add_option("--complex", f.complex, "Complex JSON file");
  ostrover->add_option("--cycle", f.cycle, "Cycles JSON file {\"cycles\": [{\"class\", \"cycle\"}]}");
  ostrover->add_option("--slope", f.slope, "Slope I as a rational");
  ostrover->add_option("--grid", f.grid, "Number of grid points s = 0, 1, ...")->check(CLI::Range(2, 1000));
  add_manifold(ostrover, f);
  add_common(ostrover, f);

  auto* fibration = app.add_subcommand("fibration", "Fibration tables");
  fibration->add_option("action", f.action, "check")->required()->check(CLI::IsMember({"check"}));
  auto* fibration_check = app.add_subcommand("fibration-check", "Check fibration tables");
  for (auto* cmd : {fibration, fibration_check}) {
    cmd->add_option("--fibration,--file", f.fibration, "Fibration JSON file or bundled name");
    cmd->add_option("--manifold", f.manifold, "Fiber for the product fibration when no file is given");
    cmd->add_flag("--all", f.all, "Run every check (the default)");
    add_common(cmd, f);
  }

  auto* examples = app.add_subcommand("examples", "Bundled scenarios");
  examples->add_option("name", f.example, "Scenario name");
  examples->add_flag("--all", f.all, "Run every scenario");
  add_common(examples, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  std::string verb = app.get_subcommands().front()->get_name();
  if (verb == "fibration") verb = "fibration-check";
  try {
    const String report = adopt(run_verb(verb, f));
    const int code = qhd_report_exit_code(report.get());
    if (f.json) {
      std::cout << report.get() << "\n";
    } else {
      char* text = nullptr;
      check(qhd_report_render_text(report.get(), &text));
      std::cout << adopt(text).get();
    }
    return code < 0 ? kInternalError : code;
  } catch (const Failure& failure) {
    if (failure.status != QHD_ERR_ARGUMENT || *qhd_last_error() != '\0')
      std::cerr << "error: " << qhd_status_name(failure.status) << ": " << qhd_last_error() << "\n";
    return failure.status == QHD_ERR_INTERNAL ? kInternalError : kInputError;
  }
}
