#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/prob_space.hpp"
#include "gaugeprob/quadrature.hpp"
#include "gaugeprob/random_function.hpp"
#include "gaugeprob/stochastic.hpp"

namespace gaugeprob {

struct FubiniOptions {
  // Chebyshev points on [a, b] on which |f(t, .)| <= A is checked, in
  // addition to every tag of the final division.
  std::size_t grid_points = 257;
  double eps = 1e-3;
  double eta = 1e-2;
  StochasticOptions integration{};
};

struct FubiniReport {
  double lhs = 0.0;  // gauge integral of t -> E f(t, .)
  double rhs = 0.0;  // E of the pathwise integral
  double difference = 0.0;
  double threshold = 0.0;  // 20 tol
  bool pass = false;
  bool bound_holds = false;  // |S(f; d)| <= A (b - a) on the final division
  std::size_t hypothesis_points = 0;
  QuadratureResult lhs_quadrature;
  std::optional<StochasticIntegralResult> pathwise;
};

// Chebyshev-Lobatto points (a + b)/2 + (b - a)/2 cos(pi j / (n - 1)).
inline std::vector<double> chebyshev_grid(const Interval& domain, std::size_t n) {
  if (n < 2) throw InvalidArgument("grid needs at least two points");
  std::vector<double> t(n);
  const double mid = 0.5 * (domain.lower() + domain.upper());
  const double half = 0.5 * domain.width();
  for (std::size_t j = 0; j < n; ++j)
    t[j] = mid + half * std::cos(std::numbers::pi * static_cast<double>(j) /
                                 static_cast<double>(n - 1));
  t.front() = domain.upper();
  t.back() = domain.lower();
  return t;
}

namespace detail {

// Throws HypothesisViolation at the first t where some outcome of positive
// weight has |f(t, w)| > A(w).
inline void check_domination(const RandomFunction& f, const RandomVariable& dominator,
                             std::span<const double> ts) {
  const auto& space = *f.space();
  for (double t : ts) {
    const RandomVariable y = f.at(t);
    std::vector<std::size_t> bad;
    for (std::size_t w = 0; w < space.size(); ++w)
      if (space.weight(w) > 0.0 && std::abs(y[w]) > dominator[w]) bad.push_back(w);
    if (!bad.empty()) throw HypothesisViolation(t, std::move(bad));
  }
}

}  // namespace detail

// Exchange check: integral over t of E f(t, .) against E of the pathwise
// integral, under a dominating variable A >= |f(t, .)| a.s.
inline FubiniReport fubini_check(const RandomFunction& f, const Interval& domain,
                                 const RandomVariable& dominator, double tol,
                                 const std::optional<GaugeFamily>& family = {},
                                 const FubiniOptions& opts = {}) {
  if (!same_space(dominator, RandomVariable::constant(f.space(), 0.0)))
    throw SpaceMismatch();
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  for (std::size_t w = 0; w < dominator.size(); ++w)
    if (f.space()->weight(w) > 0.0 && dominator[w] < 0.0)
      throw InvalidArgument("dominating variable must be non-negative");

  const auto grid = chebyshev_grid(domain, opts.grid_points);
  detail::check_domination(f, dominator, grid);

  const GaugeFamily gauges = family ? *family : f.shared_family(domain, tol);
  FubiniReport report;
  report.pathwise.emplace(
      integrate_pathwise(f, domain, opts.eps, opts.eta, tol, gauges, opts.integration));
  const auto& d = *report.pathwise->final_division;
  detail::check_domination(f, dominator, d.tags());
  report.hypothesis_points = grid.size() + d.size();

  const auto& space = *f.space();
  // Separable form: E f(t, .) = sum_k E[C_k] phi_k(t).
  std::vector<double> mean_coefficients;
  for (const auto& term : f.terms()) mean_coefficients.push_back(expectation(term.coefficient));
  const ScalarFn mean_path = [&](double t) {
    if (f.is_separable()) {
      double m = 0.0;
      for (std::size_t k = 0; k < mean_coefficients.size(); ++k)
        m += mean_coefficients[k] * f.terms()[k].basis(t);
      return m;
    }
    return expectation(f.at(t));
  };
  QuadratureOptions qopts;
  qopts.tol = tol;
  qopts.max_levels = opts.integration.max_levels;
  qopts.limits = opts.integration.limits;
  report.lhs_quadrature = kh_integrate(mean_path, domain, qopts, gauges);

  report.lhs = report.lhs_quadrature.value;
  report.rhs = expectation(report.pathwise->integral);
  report.difference = std::abs(report.lhs - report.rhs);
  report.threshold = 20.0 * tol;
  report.pass = report.lhs_quadrature.converged && report.difference <= report.threshold;

  // Relative slack covers rounding in the piece lengths only.
  const RandomVariable s = random_riemann_sum(f, d);
  report.bound_holds = true;
  for (std::size_t w = 0; w < s.size(); ++w)
    if (space.weight(w) > 0.0 &&
        std::abs(s[w]) > dominator[w] * domain.width() * (1.0 + 1e-12))
      report.bound_holds = false;
  return report;
}

}  // namespace gaugeprob
