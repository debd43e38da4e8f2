#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "gaugeprob/error.hpp"
#include "gaugeprob/prob_space.hpp"
#include "gaugeprob/sampling.hpp"

namespace gaugeprob::cli {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

namespace detail {

inline const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ScenarioError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError((path == "/" ? path : path + "/") + key, "missing");
  return *it;
}

inline double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ScenarioError(path, "expected a number");
  return v.get<double>();
}

inline std::vector<double> numbers(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ScenarioError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], path + "/" + std::to_string(i)));
  return out;
}

inline std::string text(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ScenarioError(path, "expected a string");
  return v.get<std::string>();
}

// Library errors raised while building an object become ScenarioErrors
// naming the field.
template <class F>
auto at_field(const std::string& path, F&& build) {
  try {
    return build();
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioError(path, e.what());
  }
}

}  // namespace detail

// {"outcomes": [labels], "weights": [reals]} (weights optional: uniform) or
// {"sample": {"n": N}}.
inline SpacePtr space_from_json(const Json& j, const std::string& path = "/space") {
  if (!j.is_object()) throw ScenarioError(path, "expected an object");
  if (j.contains("sample")) {
    const Json& n = detail::require(j.at("sample"), "n", path + "/sample");
    if (!n.is_number_integer() || n.get<std::int64_t>() < 1)
      throw ScenarioError(path + "/sample/n", "expected an integer >= 1");
    return make_uniform_space(n.get<std::size_t>());
  }
  const Json& outcomes = detail::require(j, "outcomes", path);
  if (!outcomes.is_array() || outcomes.empty())
    throw ScenarioError(path + "/outcomes", "expected a non-empty array");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    labels.push_back(detail::text(outcomes[i], path + "/outcomes/" + std::to_string(i)));
  std::vector<double> weights;
  if (j.contains("weights")) {
    weights = detail::numbers(j.at("weights"), path + "/weights");
  } else {
    weights.assign(labels.size(), 1.0 / static_cast<double>(labels.size()));
  }
  return detail::at_field(path, [&] { return make_space(std::move(labels), std::move(weights)); });
}

inline OrderedJson space_to_json(const DiscreteProbabilitySpace& s) {
  OrderedJson j;
  j["outcomes"] = std::vector<std::string>(s.labels().begin(), s.labels().end());
  j["weights"] = std::vector<double>(s.weights().begin(), s.weights().end());
  return j;
}

// {"values": [...]}, {"constant": c} or {"sample": "<distribution>"}, with an
// optional "space" that is either the string "space" (the scenario's space)
// or an inline space equal to it. Sampled variables use `stream` unless the
// object names its own.
inline RandomVariable variable_from_json(const Json& j, const SpacePtr& space,
                                         std::uint64_t seed, std::uint64_t stream,
                                         const std::string& path) {
  if (!j.is_object()) throw ScenarioError(path, "expected an object");
  if (j.contains("space")) {
    const Json& s = j.at("space");
    if (s.is_string()) {
      if (s.get<std::string>() != "space")
        throw ScenarioError(path + "/space", "only the reference \"space\" is supported");
    } else if (*space_from_json(s, path + "/space") != *space) {
      throw ScenarioError(path + "/space", "inline space differs from the scenario space");
    }
  }
  const int forms = static_cast<int>(j.contains("values")) +
                    static_cast<int>(j.contains("constant")) +
                    static_cast<int>(j.contains("sample"));
  if (forms != 1)
    throw ScenarioError(path, "expected exactly one of values, constant, sample");
  if (j.contains("values")) {
    auto v = detail::numbers(j.at("values"), path + "/values");
    return detail::at_field(path + "/values",
                            [&] { return RandomVariable(space, std::move(v)); });
  }
  if (j.contains("constant")) {
    const double c = detail::number(j.at("constant"), path + "/constant");
    return detail::at_field(path, [&] { return RandomVariable::constant(space, c); });
  }
  const auto dist = detail::text(j.at("sample"), path + "/sample");
  if (j.contains("stream")) {
    const Json& s = j.at("stream");
    if (!s.is_number_unsigned()) throw ScenarioError(path + "/stream", "expected an unsigned integer");
    stream = s.get<std::uint64_t>();
  }
  return detail::at_field(path + "/sample",
                          [&] { return sample_variable(space, dist, seed, stream); });
}

inline OrderedJson variable_to_json(const RandomVariable& x) {
  return std::vector<double>(x.values().begin(), x.values().end());
}

}  // namespace gaugeprob::cli
