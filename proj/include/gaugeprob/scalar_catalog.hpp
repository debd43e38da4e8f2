#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/families.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/interval.hpp"
#include "gaugeprob/quadrature.hpp"

namespace gaugeprob {

// Builds the gauge family paired with an integrand for a domain and target
// tolerance.
using FamilyFactory = std::function<GaugeFamily(const Interval&, double tol)>;

inline FamilyFactory uniform_factory() {
  return [](const Interval& domain, double) { return uniform_family(domain); };
}

struct ScalarEntry {
  std::string id;
  std::string description;
  ScalarFn fn;
  Interval domain;
  // Closed-form integral over `domain`, when known.
  std::optional<double> exact;
  // Upper bound for sup |fn| over the domain; infinity for unbounded integrands.
  double sup_abs;
  FamilyFactory family;
};

namespace detail {

inline double fprime_oscillating(double t) {
  if (t == 0.0) return 0.0;
  const double u = 1.0 / (t * t);
  return 2.0 * t * std::sin(u) - 2.0 / t * std::cos(u);
}

// 63 points j/64 plus the first 37 odd multiples of 1/128: every midpoint tag
// that uniform bisection produces on [0, 1] at levels 0..4 lies in the set.
inline std::vector<double> resonant_set() {
  std::vector<double> s;
  for (int j = 1; j < 64; ++j) s.push_back(j / 64.0);
  for (int i = 0; i < 37; ++i) s.push_back((2 * i + 1) / 128.0);
  return s;
}

inline std::map<std::string, ScalarEntry, std::less<>> build_scalar_catalog() {
  std::map<std::string, ScalarEntry, std::less<>> c;
  auto add = [&](ScalarEntry e) { c.emplace(e.id, std::move(e)); };
  const double inf = std::numeric_limits<double>::infinity();

  add({"constant", "phi(t) = 2 on [0, 3]", [](double) { return 2.0; },
       Interval(0.0, 3.0), 6.0, 2.0, uniform_factory()});

  for (int k = 0; k <= 5; ++k) {
    add({"monomial" + std::to_string(k), "phi(t) = t^" + std::to_string(k) + " on [0, 1]",
         [k](double t) { return std::pow(t, k); }, Interval(0.0, 1.0),
         1.0 / (k + 1), 1.0, uniform_factory()});
  }

  // Antiderivative t - t^2 + t^3 - t^4 + t^5 - t^6.
  add({"poly5", "phi(t) = 1 - 2t + 3t^2 - 4t^3 + 5t^4 - 6t^5 on [-1, 2]",
       [](double t) {
         return 1.0 + t * (-2.0 + t * (3.0 + t * (-4.0 + t * (5.0 + t * -6.0))));
       },
       Interval(-1.0, 2.0), -36.0, 135.0, uniform_factory()});

  add({"sin-combination", "phi(t) = sin(t) + cos(3t)/2 on [0, pi]",
       [](double t) { return std::sin(t) + 0.5 * std::cos(3.0 * t); },
       Interval(0.0, std::numbers::pi), 2.0, 1.5, uniform_factory()});

  add({"cos-combination", "phi(t) = cos(2t) - 3 sin(t/2) on [0, 2]",
       [](double t) { return std::cos(2.0 * t) - 3.0 * std::sin(0.5 * t); },
       Interval(0.0, 2.0), 0.5 * std::sin(4.0) + 6.0 * (std::cos(1.0) - 1.0), 4.0,
       uniform_factory()});

  add({"sin2pi", "phi(t) = sin(2 pi t) on [0, 1]",
       [](double t) { return std::sin(2.0 * std::numbers::pi * t); }, Interval(0.0, 1.0), 0.0,
       1.0, uniform_factory()});

  add({"fprime-oscillating",
       "phi = F' with F(t) = t^2 sin(1/t^2), F(0) = 0, on [0, 1]; not Lebesgue "
       "integrable, gauge integral F(1) - F(0) = sin(1)",
       fprime_oscillating, Interval(0.0, 1.0), std::sin(1.0), inf,
       [](const Interval& d, double) { return origin_singular_family(d, 0.0); }});

  add({"f-oscillating", "F(t) = t^2 sin(1/t^2), F(0) = 0, on [0, 1]",
       [](double t) { return t == 0.0 ? 0.0 : t * t * std::sin(1.0 / (t * t)); },
       Interval(0.0, 1.0), std::nullopt, 1.0, uniform_factory()});

  auto s = resonant_set();
  auto set = std::make_shared<const std::vector<double>>([&] {
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    return sorted;
  }());
  add({"indicator100",
       "phi = indicator of a 100-point set of dyadic rationals in [0, 1]; "
       "integral 0",
       [set](double t) {
         return std::binary_search(set->begin(), set->end(), t) ? 1.0 : 0.0;
       },
       Interval(0.0, 1.0), 0.0, 1.0,
       [s](const Interval& d, double tol) { return pinching_family(s, d, tol); }});

  return c;
}

}  // namespace detail

inline const std::map<std::string, ScalarEntry, std::less<>>& scalar_catalog() {
  static const auto catalog = detail::build_scalar_catalog();
  return catalog;
}

inline const ScalarEntry& scalar_entry(std::string_view id) {
  const auto& c = scalar_catalog();
  const auto it = c.find(id);
  if (it == c.end()) throw CatalogMiss(std::string(id));
  return it->second;
}

inline std::vector<double> indicator100_points() { return detail::resonant_set(); }

}  // namespace gaugeprob
