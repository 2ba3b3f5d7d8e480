#pragma once

/// JSON encoding of forms. The layout is the fixture format:
///   {"r": int, "d": int, "terms": [{"e": [int, ...], "c": "num/den"}, ...]}
/// with terms in canonical monomial order and coefficients as canonical
/// fraction strings. Keys keep insertion order so output is byte-stable.

#include <hessmap/form.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace hessmap {

using Json = nlohmann::ordered_json;

inline Json to_json(const Form& f) {
  Json terms = Json::array();
  for (const auto& [e, c] : f.terms()) {
    Json t;
    t["e"] = e.entries();
    t["c"] = to_string(c);
    terms.push_back(std::move(t));
  }
  Json out;
  out["r"] = static_cast<int>(f.nvars()) - 1;
  out["d"] = f.degree();
  out["terms"] = std::move(terms);
  return out;
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw std::invalid_argument("rational must be a fraction string or an integer");
}

inline Form form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("r") || !j.contains("d") || !j.contains("terms"))
    throw std::invalid_argument("form JSON needs keys r, d, terms");
  const int r = j.at("r").get<int>();
  const int d = j.at("d").get<int>();
  if (r < 0) throw std::invalid_argument("form JSON: r must be non-negative");
  Form f(static_cast<std::size_t>(r) + 1, d);
  for (const auto& t : j.at("terms")) {
    const auto entries = t.at("e").get<std::vector<int>>();
    if (entries.size() != static_cast<std::size_t>(r) + 1)
      throw std::invalid_argument("form JSON: exponent length differs from r+1");
    const Exponent e(entries);
    const Rational c = rational_from_json(t.at("c"));
    if (sgn(c) == 0) throw std::invalid_argument("form JSON: stored zero coefficient");
    if (f.terms().count(e)) throw std::invalid_argument("form JSON: duplicate exponent");
    f.accumulate(e, c);
  }
  return f;
}

inline std::string serialize(const Form& f) { return to_json(f).dump(); }
inline Form parse_form(const std::string& text) { return form_from_json(Json::parse(text)); }

}  // namespace hessmap
