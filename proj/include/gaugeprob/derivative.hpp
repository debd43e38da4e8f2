#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/prob_space.hpp"
#include "gaugeprob/random_function.hpp"
#include "gaugeprob/stochastic.hpp"
#include "gaugeprob/uniqueness.hpp"

namespace gaugeprob {

// Symmetric stand-in for "all t with 0 < |t - t0| < delta".
struct DerivativeGrid {
  double radius = 1e-3;
  int points = 16;
};

struct DerivativeRow {
  double t;
  double tail;
};

struct DerivativeReport {
  double t0 = 0.0;
  double eps = 0.0;
  double eta = 0.0;
  bool pass = false;
  double worst_tail = 0.0;
  double worst_t = 0.0;
  std::vector<DerivativeRow> rows;
};

// For each grid t: P(|(F(t) - F(t0)) / (t - t0) - f(t0)| >= eps). Passes when
// every tail is below eta.
inline DerivativeReport derivative_in_probability_at(
    const RandomFunction& F, const RandomFunction& f_candidate, const Interval& domain,
    double t0, double eps, double eta, const DerivativeGrid& grid = {}) {
  if (!(domain.lower() < t0 && t0 < domain.upper()))
    throw InvalidArgument("t0 must be interior to the domain");
  if (!(eps > 0.0) || !(eta > 0.0)) throw InvalidArgument("eps and eta must be positive");
  if (!(grid.radius > 0.0) || grid.points < 2)
    throw InvalidArgument("derivative grid needs radius > 0 and >= 2 points");
  require_same_space(RandomVariable::constant(F.space(), 0.0),
                     RandomVariable::constant(f_candidate.space(), 0.0));

  const int half = grid.points / 2;
  std::vector<double> ts;
  for (int j = half; j >= 1; --j) ts.push_back(t0 - grid.radius * j / half);
  for (int j = 1; j <= half; ++j) ts.push_back(t0 + grid.radius * j / half);
  std::erase_if(ts, [&](double t) { return !domain.contains(t) || t == t0; });
  if (ts.empty()) throw InvalidArgument("no derivative grid point inside the domain");

  const RandomVariable F0 = F.at(t0);
  const RandomVariable f0 = f_candidate.at(t0);
  DerivativeReport report;
  report.t0 = t0;
  report.eps = eps;
  report.eta = eta;
  report.worst_t = ts.front();
  report.worst_tail = -1.0;
  for (double t : ts) {
    const RandomVariable Ft = F.at(t);
    const double tail = prob_event(*F.space(), [&](std::size_t w) {
      const double q = (Ft[w] - F0[w]) / (t - t0);
      return std::abs(q - f0[w]) >= eps;
    });
    report.rows.push_back({t, tail});
    if (tail > report.worst_tail) {
      report.worst_tail = tail;
      report.worst_t = t;
    }
  }
  report.pass = report.worst_tail < eta;
  return report;
}

// a + (b - a) j / (count + 1), j = 1..count.
inline std::vector<double> interior_points(const Interval& domain, int count) {
  std::vector<double> t;
  for (int j = 1; j <= count; ++j)
    t.push_back(domain.lower() + domain.width() * j / (count + 1));
  return t;
}

struct FtcOptions {
  int derivative_points = 10;
  DerivativeGrid grid{};
  StochasticOptions integration{};
};

// Exploratory comparison of the pathwise integral of f with F(b) - F(a).
// Nothing here is a claim; the report carries the computed numbers.
struct FtcReport {
  std::vector<DerivativeReport> derivative_checks;
  bool derivative_precondition = false;
  std::optional<StochasticIntegralResult> integral;
  std::string integration_failure;
  std::optional<RandomVariable> increment;  // F(b, .) - F(a, .)
  std::vector<DeviationPoint> deviation_grid;
  bool almost_surely_equal = false;
  double equality_tolerance = 0.0;
  double max_abs_difference = 0.0;
};

inline FtcReport ftc_experiment(const RandomFunction& F, const RandomFunction& f,
                                const Interval& domain, double eps, double eta,
                                double tol, const FtcOptions& opts = {}) {
  FtcReport report;
  report.derivative_precondition = true;
  for (double t0 : interior_points(domain, opts.derivative_points)) {
    report.derivative_checks.push_back(
        derivative_in_probability_at(F, f, domain, t0, eps, eta, opts.grid));
    report.derivative_precondition &= report.derivative_checks.back().pass;
  }

  report.increment = linear_combination(1.0, F.at(domain.upper()), -1.0,
                                        F.at(domain.lower()));
  report.equality_tolerance = 10.0 * tol;
  try {
    report.integral = integrate_pathwise(f, domain, eps, eta, tol, {}, opts.integration);
  } catch (const NonConvergence& e) {
    report.integration_failure = e.what();
    return report;
  }

  const auto& I = report.integral->integral;
  const auto& inc = *report.increment;
  for (std::size_t w = 0; w < I.size(); ++w)
    if (f.space()->weight(w) > 0.0)
      report.max_abs_difference =
          std::max(report.max_abs_difference, std::abs(I[w] - inc[w]));
  report.almost_surely_equal = almost_surely_equal(I, inc, report.equality_tolerance);

  std::vector<double> grid;
  for (const auto& target : default_tail_grid()) grid.push_back(target.eps);
  grid.push_back(report.equality_tolerance);
  std::sort(grid.begin(), grid.end(), std::greater<>());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (double e : grid) report.deviation_grid.push_back({e, deviation_probability(I, inc, e)});
  return report;
}

}  // namespace gaugeprob
