#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gaugeprob/cli/prob_json.hpp"
#include "gaugeprob/derivative.hpp"
#include "gaugeprob/error.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/random_catalog.hpp"
#include "gaugeprob/random_function.hpp"
#include "gaugeprob/scalar_catalog.hpp"
#include "gaugeprob/uniqueness.hpp"

namespace gaugeprob::cli {

inline constexpr const char* kScenarioSchema = "gaugeprob.scenario/1";

// Scalar integrand with the family it is integrated under.
struct ScalarProblem {
  std::string id;
  ScalarFn fn;
  Interval domain;
  std::optional<double> exact;
  FamilyFactory family;
};

// Gauge choice: "paired" (the integrand's own family), "uniform",
// "paired-scaled", or a constant starting width halved per level.
struct GaugeChoice {
  std::string name = "paired";
  double constant_width = 0.0;
};

struct Scenario {
  std::string source_kind;  // "catalog" or "scenario"
  std::string source;       // catalog id or file path
  std::optional<ScalarProblem> scalar;
  std::optional<RandomEntry> random;
  GaugeChoice gauge;
  std::optional<double> eps, eta, tol;
  std::optional<int> levels;
  std::optional<double> t0;
  DerivativeGrid derivative_grid;
};

// The family selected by `choice` for a scalar integrand or random function.
inline GaugeFamily select_family(const GaugeChoice& choice, const GaugeFamily& paired,
                                 const Interval& domain) {
  if (choice.name == "paired") return paired;
  if (choice.name == "uniform") return uniform_family(domain);
  if (choice.name == "paired-scaled") return scaled_family(paired, kScaledStrategyFactor);
  const double w = choice.constant_width;
  return [w](int level) { return constant_gauge(std::ldexp(w, -level)); };
}

namespace detail {

inline Interval domain_from_json(const Json& j, const std::string& path) {
  const auto v = numbers(j, path);
  if (v.size() != 2) throw ScenarioError(path, "expected [a, b]");
  return at_field(path, [&] { return Interval(v[0], v[1]); });
}

inline std::optional<double> optional_number(const Json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return number(j.at(key), std::string("/") + key);
}

inline std::optional<double> optional_positive(const Json& j, const char* key) {
  const auto v = optional_number(j, key);
  if (v && !(*v > 0.0 && std::isfinite(*v)))
    throw ScenarioError(std::string("/") + key, "must be finite and positive");
  return v;
}

inline GaugeChoice gauge_from_json(const Json& g) {
  GaugeChoice c;
  if (g.is_string()) {
    c.name = g.get<std::string>();
    if (c.name != "paired" && c.name != "uniform" && c.name != "paired-scaled")
      throw ScenarioError("/gauge", "unknown gauge '" + c.name + "'");
    return c;
  }
  const double w = number(require(g, "constant", "/gauge"), "/gauge/constant");
  if (!(w > 0.0) || !std::isfinite(w))
    throw ScenarioError("/gauge/constant", "width must be finite and positive");
  c.name = "constant";
  c.constant_width = w;
  return c;
}

// Terms [{"coefficient": <variable>, "basis": "<scalar catalog id>"}]. Term k
// samples on stream k + 1, so function and antiderivative terms at the same
// position share their draws.
inline std::vector<SeparableTerm> terms_from_json(const Json& j, const SpacePtr& space,
                                                  std::uint64_t seed, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ScenarioError(path, "expected a non-empty array");
  std::vector<SeparableTerm> terms;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = path + "/" + std::to_string(k);
    const auto basis = text(require(j[k], "basis", at), at + "/basis");
    const ScalarEntry* entry = nullptr;
    try {
      entry = &scalar_entry(basis);
    } catch (const CatalogMiss& e) {
      throw ScenarioError(at + "/basis", e.what());
    }
    auto c = variable_from_json(require(j[k], "coefficient", at), space, seed, k + 1,
                                at + "/coefficient");
    terms.push_back({std::move(c), entry->fn, entry->family, basis});
  }
  return terms;
}

inline RandomFunction function_from_json(const Json& j, const SpacePtr& space,
                                         std::uint64_t seed, const std::string& path) {
  std::string form = "separable";
  if (j.contains("form")) form = text(j.at("form"), path + "/form");
  if (form != "separable" && form != "pathwise")
    throw ScenarioError(path + "/form", "expected \"separable\" or \"pathwise\"");
  auto terms = terms_from_json(require(j, "terms", path), space, seed, path + "/terms");
  if (form == "separable") return RandomFunction::separable(space, std::move(terms));

  // Same sum, evaluated through the general pathwise code path.
  std::vector<FamilyFactory> families;
  for (const auto& t : terms) {
    const auto v = t.coefficient.values();
    if (std::any_of(v.begin(), v.end(), [](double c) { return c != 0.0; }))
      families.push_back(t.family);
  }
  return RandomFunction::pathwise(
      space,
      [terms = std::move(terms)](double t, std::size_t w) {
        double y = 0.0;
        for (const auto& term : terms) y += term.coefficient[w] * term.basis(t);
        return y;
      },
      std::move(families));
}

}  // namespace detail

// Resolves a catalog id: scalar catalog first, then the random catalog.
inline Scenario scenario_from_catalog(const std::string& id, std::uint64_t seed) {
  Scenario s;
  s.source_kind = "catalog";
  s.source = id;
  if (const auto it = scalar_catalog().find(id); it != scalar_catalog().end()) {
    const auto& e = it->second;
    s.scalar = ScalarProblem{e.id, e.fn, e.domain, e.exact, e.family};
    return s;
  }
  s.random.emplace(random_entry(id, seed));
  return s;
}

inline Scenario scenario_from_json(const Json& j, const std::string& path, std::uint64_t seed) {
  using namespace detail;
  if (!j.is_object()) throw ScenarioError("/", "expected a JSON object");
  if (j.contains("schema") && text(j.at("schema"), "/schema") != kScenarioSchema)
    throw ScenarioError("/schema", std::string("expected \"") + kScenarioSchema + "\"");

  Scenario s;
  s.source_kind = "scenario";
  s.source = path;
  s.eps = optional_positive(j, "eps");
  s.eta = optional_positive(j, "eta");
  s.tol = optional_positive(j, "tol");
  s.t0 = optional_number(j, "t0");
  if (j.contains("levels")) {
    if (!j.at("levels").is_number_integer() || j.at("levels").get<int>() < 1)
      throw ScenarioError("/levels", "expected an integer >= 1");
    s.levels = j.at("levels").get<int>();
  }
  if (j.contains("gauge")) s.gauge = gauge_from_json(j.at("gauge"));
  if (j.contains("derivative")) {
    const Json& d = j.at("derivative");
    if (d.contains("radius")) s.derivative_grid.radius = number(d.at("radius"), "/derivative/radius");
    if (!(s.derivative_grid.radius > 0.0))
      throw ScenarioError("/derivative/radius", "must be positive");
    if (d.contains("points")) {
      if (!d.at("points").is_number_integer() || d.at("points").get<int>() < 2)
        throw ScenarioError("/derivative/points", "expected an integer >= 2");
      s.derivative_grid.points = d.at("points").get<int>();
    }
  }

  const bool has_scalar = j.contains("integrand");
  const bool has_random = j.contains("function");
  if (has_scalar == has_random)
    throw ScenarioError("/", "expected exactly one of integrand, function");

  if (has_scalar) {
    const auto id = text(j.at("integrand"), "/integrand");
    const ScalarEntry* e = nullptr;
    try {
      e = &scalar_entry(id);
    } catch (const CatalogMiss& miss) {
      throw ScenarioError("/integrand", miss.what());
    }
    ScalarProblem p{e->id, e->fn, e->domain, e->exact, e->family};
    if (j.contains("domain")) {
      p.domain = domain_from_json(j.at("domain"), "/domain");
      if (!(p.domain == e->domain)) p.exact.reset();
    }
    s.scalar = std::move(p);
    return s;
  }

  const Json& fj = j.at("function");
  if (fj.contains("catalog")) {
    const auto id = text(fj.at("catalog"), "/function/catalog");
    try {
      s.random.emplace(random_entry(id, seed));
    } catch (const CatalogMiss& miss) {
      throw ScenarioError("/function/catalog", miss.what());
    }
    if (j.contains("domain")) s.random->domain = domain_from_json(j.at("domain"), "/domain");
    return s;
  }

  const SpacePtr space = space_from_json(require(j, "space", "/"), "/space");
  const Interval domain = domain_from_json(require(j, "domain", "/"), "/domain");
  RandomEntry entry{path, "scenario file", domain,
                    function_from_json(fj, space, seed, "/function"),
                    1e-9, 1e-3, 1e-2, std::nullopt, std::nullopt};
  if (j.contains("antiderivative")) {
    const Json& a = j.at("antiderivative");
    entry.antiderivative = RandomFunction::separable(
        space, terms_from_json(require(a, "terms", "/antiderivative"), space, seed,
                               "/antiderivative/terms"));
  }
  if (j.contains("dominator"))
    entry.dominator = variable_from_json(j.at("dominator"), space, seed, 0, "/dominator");
  s.random.emplace(std::move(entry));
  return s;
}

inline Scenario load_scenario(const std::string& path, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw ScenarioError("/", std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(j, path, seed);
}

}  // namespace gaugeprob::cli
