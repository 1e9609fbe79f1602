#pragma once

#include <json.hpp>

#include "ppadtree/error.hpp"
#include "ppadtree/rational.hpp"

namespace ppad {

using json = nlohmann::json;

inline json rational_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ValidationError("expected a rational string \"p/q\", got " + j.dump());
}

inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace ppad
