#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "gaugeprob/cousin.hpp"
#include "gaugeprob/error.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/interval.hpp"
#include "gaugeprob/tagged_division.hpp"

namespace gaugeprob {

using ScalarFn = std::function<double(double)>;

namespace detail {

// Neumaier summation; fixed left-to-right order keeps results bit-stable.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace detail

// Sum of phi(tag_i) * (x_{i+1} - x_i).
inline double riemann_sum_scalar(const ScalarFn& phi, const TaggedDivision& d) {
  detail::CompensatedSum acc;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double t = d.tag(i);
    const double y = phi(t);
    if (!std::isfinite(y))
      throw EvaluationError(t, EvaluationError::kNoOutcome,
                            "integrand is not finite");
    acc.add(y * d.length(i));
  }
  return acc.value();
}

struct LevelRecord {
  int level;
  std::size_t pieces;
  double mesh;
  double sum;
};

struct QuadratureResult {
  double value = 0.0;
  int refinement_levels = 0;  // levels evaluated, 0..refinement_levels-1
  double final_mesh_bound = 0.0;
  bool converged = false;
  std::vector<LevelRecord> trace;
};

struct QuadratureOptions {
  double tol = 1e-9;
  int max_levels = 40;
  PartitionLimits limits{};
};

// Gauge-refinement quadrature. For m = 0, 1, ... builds a sharp division for
// the level-m gauge and evaluates its Riemann sum; stops once two successive
// sums agree within tol. Hitting the level cap (or the partition piece budget
// after at least one level) is reported through converged = false with the
// last sum as the best estimate.
inline QuadratureResult kh_integrate(const ScalarFn& phi, const Interval& domain,
                                     const QuadratureOptions& opts,
                                     const std::optional<GaugeFamily>& family = {}) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (opts.max_levels < 1) throw InvalidArgument("level cap must be >= 1");
  const GaugeFamily gauges = family ? *family : uniform_family(domain);

  QuadratureResult result;
  for (int m = 0; m < opts.max_levels; ++m) {
    std::optional<TaggedDivision> d;
    try {
      d.emplace(cousin_partition(gauges(m), domain, opts.limits));
    } catch (const PartitionLimitExceeded&) {
      if (result.trace.empty()) throw;
      break;
    }
    const double sum = riemann_sum_scalar(phi, *d);
    result.trace.push_back({m, d->size(), d->mesh(), sum});
    result.value = sum;
    result.refinement_levels = m + 1;
    result.final_mesh_bound = d->mesh();
    if (m > 0 && std::abs(sum - result.trace[m - 1].sum) <= opts.tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

inline QuadratureResult kh_integrate(const ScalarFn& phi, const Interval& domain,
                                     double tol,
                                     const std::optional<GaugeFamily>& family = {}) {
  QuadratureOptions opts;
  opts.tol = tol;
  return kh_integrate(phi, domain, opts, family);
}

}  // namespace gaugeprob
