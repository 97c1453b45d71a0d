#include "hilop/measure_json.hpp"

namespace hilop {

using nlohmann::json;

MeasureSpec measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw invalid_measure("measure JSON: expected an object with a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "density") {
    if (!j.contains("p") || !j["p"].is_number())
      throw invalid_measure("measure JSON: density needs numeric \"p\"");
    const double p = j["p"].get<double>();
    const double q = j.value("q", 0.0);
    return MeasureSpec::make_density(p, q);
  }

  if (kind == "atomic") {
    if (!j.contains("atoms") || !j["atoms"].is_array())
      throw invalid_measure("measure JSON: atomic needs an \"atoms\" array");
    std::vector<MeasureSpec::Atom> atoms;
    for (const auto& e : j["atoms"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw invalid_measure("measure JSON: each atom must be [location, weight]");
      atoms.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return MeasureSpec::atomic(std::move(atoms));
  }

  if (kind == "mixture") {
    if (!j.contains("parts") || !j["parts"].is_array())
      throw invalid_measure("measure JSON: mixture needs a \"parts\" array");
    std::vector<std::pair<double, MeasureSpec>> parts;
    for (const auto& e : j["parts"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number())
        throw invalid_measure("measure JSON: each part must be [scale, measure]");
      parts.emplace_back(e[0].get<double>(), measure_from_json(e[1]));
    }
    return MeasureSpec::mixture(std::move(parts));
  }

  throw invalid_measure("measure JSON: unknown kind \"" + kind + "\"");
}

MeasureSpec measure_from_string(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw invalid_measure("measure JSON: parse failure");
  return measure_from_json(j);
}

json measure_to_json(const MeasureSpec& mu) {
  json j;
  switch (mu.kind) {
    case MeasureSpec::Kind::density:
      j["kind"] = "density";
      j["p"] = mu.density.p;
      j["q"] = mu.density.q;
      break;
    case MeasureSpec::Kind::atomic: {
      j["kind"] = "atomic";
      auto arr = json::array();
      for (const auto& a : mu.atoms) arr.push_back(json::array({a.location, a.weight}));
      j["atoms"] = arr;
      break;
    }
    case MeasureSpec::Kind::mixture: {
      j["kind"] = "mixture";
      auto arr = json::array();
      for (const auto& [scale, part] : mu.parts)
        arr.push_back(json::array({scale, measure_to_json(part)}));
      j["parts"] = arr;
      break;
    }
  }
  return j;
}

}  // namespace hilop
