#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugeprob/gauge.hpp"
#include "gaugeprob/prob_space.hpp"
#include "gaugeprob/random_function.hpp"
#include "gaugeprob/stochastic.hpp"

namespace gaugeprob {

struct GaugeStrategy {
  std::string name;
  GaugeFamily family;
};

// Width factor of the second shipped strategy.
inline constexpr double kScaledStrategyFactor = 0.6;

// The two strategies shipped for uniqueness checks: the function's own
// (intersected path) family, and the same family with every width scaled by
// 0.6, which moves piece boundaries and tags relative to the first.
inline std::array<GaugeStrategy, 2> shipped_strategies(const RandomFunction& f,
                                                       const Interval& domain,
                                                       double tol) {
  GaugeFamily paired = f.shared_family(domain, tol);
  GaugeFamily scaled = scaled_family(paired, kScaledStrategyFactor);
  return {GaugeStrategy{"paired", std::move(paired)},
          GaugeStrategy{"paired-scaled", std::move(scaled)}};
}

struct DeviationPoint {
  double eps;
  double probability;
};

struct StrategyOutcome {
  std::string name;
  std::optional<StochasticIntegralResult> result;
  std::string failure;  // set when integration raised NonConvergence

  bool verified() const { return result && result->verified; }
};

struct UniquenessReport {
  std::array<StrategyOutcome, 2> strategies;
  bool conclusive = false;
  bool almost_surely_equal = false;
  double equality_tolerance = 0.0;
  double max_abs_difference = 0.0;
  // P(|I1 - I2| >= eps) for eps descending to 10 tol: the finite-space
  // picture of the events {|I1 - I2| >= 1/n} increasing to {I1 != I2}.
  std::vector<DeviationPoint> deviation_grid;
};

// eps = 1, 1e-1, ... while above `floor`, then `floor` itself.
inline std::vector<double> descending_eps_grid(double floor) {
  std::vector<double> grid;
  for (double e = 1.0; e > floor * (1.0 + 1e-12); e /= 10.0) grid.push_back(e);
  grid.push_back(floor);
  return grid;
}

inline UniquenessReport verify_uniqueness(const RandomFunction& f,
                                          const Interval& domain,
                                          const std::array<GaugeStrategy, 2>& strategies,
                                          double eps, double eta, double tol,
                                          const StochasticOptions& opts = {}) {
  UniquenessReport report;
  for (std::size_t i = 0; i < 2; ++i) {
    auto& out = report.strategies[i];
    out.name = strategies[i].name;
    try {
      out.result = integrate_pathwise(f, domain, eps, eta, tol, strategies[i].family, opts);
    } catch (const NonConvergence& e) {
      out.failure = e.what();
    }
  }
  report.equality_tolerance = 10.0 * tol;
  report.conclusive = report.strategies[0].verified() && report.strategies[1].verified();
  if (!report.strategies[0].result || !report.strategies[1].result) return report;

  const auto& i1 = report.strategies[0].result->integral;
  const auto& i2 = report.strategies[1].result->integral;
  for (std::size_t w = 0; w < i1.size(); ++w)
    if (f.space()->weight(w) > 0.0)
      report.max_abs_difference =
          std::max(report.max_abs_difference, std::abs(i1[w] - i2[w]));
  report.almost_surely_equal = almost_surely_equal(i1, i2, report.equality_tolerance);
  for (double e : descending_eps_grid(report.equality_tolerance))
    report.deviation_grid.push_back({e, deviation_probability(i1, i2, e)});
  return report;
}

}  // namespace gaugeprob
