#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qhdescent/fibration.hpp"
#include "qhdescent/morse.hpp"
#include "qhdescent/qring.hpp"
#include "qhdescent/seidel.hpp"

// JSON forms of every engine type. Rationals are strings "p" or "p/q"; JSON
// integers are accepted on input, floating-point numbers never are. Class
// references may be basis names or indices and are written back as names.
namespace qhd::io {

using Json = nlohmann::ordered_json;

// Parse errors carry line and column; `source` names the input in messages.
Json parse(std::string_view text, std::string_view source);
Json load_file(const std::string& path);

Rational rational_from_json(const Json& j, std::string_view where);
Json to_json(const Rational& r);

// Exact: [{"eps","coef"}, ...]. With a floor: {"terms": [...], "floor": "p/q"}.
novikov::Scalar scalar_from_json(const Json& j);
Json to_json(const novikov::Scalar& s);
// "-inf" for bottom.
std::string valuation_string(const novikov::Valuation& v);

qring::ManifoldSpec manifold_from_json(const Json& j);
Json to_json(const qring::ManifoldSpec& spec);

// [{"class", "qpow", "scalar"}, ...]
qring::QElement element_from_json(const Json& j, const qring::Manifold& m);
Json to_json(const qring::QElement& a, const qring::Manifold& m);

// Either a list of {"label", "terms"} or {"elements": [...]}; labels default to S1, S2, ...
std::vector<seidel::SeidelElement> elements_from_json(const Json& j, const qring::Manifold& m);
Json to_json(const std::vector<seidel::SeidelElement>& elements, const qring::Manifold& m);

morse::FiltrationComplex complex_from_json(const Json& j);
Json to_json(const morse::FiltrationComplex& c);
// {"cycle": [{"generator", "coef"}]} or the bare list.
morse::Chain cycle_from_json(const Json& j, const morse::FiltrationComplex& c);
Json to_json(const morse::Chain& chain, const morse::FiltrationComplex& c);
struct NamedCycle {
  std::string cls;
  morse::Chain cycle;
};
// {"cycles": [{"class", "cycle"}]}.
std::vector<NamedCycle> cycles_from_json(const Json& j, const morse::FiltrationComplex& c);

// Manifold fields of the fiber plus "sigma0", "sections", "p_intersection",
// "tables_complete" and an optional "fibration_name".
fibration::FibrationSpec fibration_from_json(const Json& j);
Json to_json(const fibration::FibrationSpec& spec);

}  // namespace qhd::io
