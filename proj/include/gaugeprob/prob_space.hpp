#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/quadrature.hpp"

namespace gaugeprob {

// Finite probability space: outcomes with non-negative weights renormalized to
// sum to one. Events are arbitrary subsets of outcomes.
class DiscreteProbabilitySpace {
 public:
  DiscreteProbabilitySpace(std::vector<std::string> labels,
                           std::vector<double> weights)
      : labels_(std::move(labels)), weights_(std::move(weights)) {
    if (weights_.empty()) throw InvalidArgument("space needs at least one outcome");
    if (labels_.size() != weights_.size())
      throw InvalidArgument("one label per weight required");
    detail::CompensatedSum total;
    for (double w : weights_) {
      if (!std::isfinite(w) || w < 0.0)
        throw InvalidArgument("weights must be finite and non-negative");
      total.add(w);
    }
    const double sum = total.value();
    if (!(sum > 0.0)) throw InvalidArgument("weights must not all be zero");
    if (sum != 1.0)
      for (double& w : weights_) w /= sum;
  }

  static DiscreteProbabilitySpace uniform(std::size_t n) {
    if (n == 0) throw InvalidArgument("space needs at least one outcome");
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = "w" + std::to_string(i);
    return {std::move(labels), std::vector<double>(n, 1.0 / static_cast<double>(n))};
  }

  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<const std::string> labels() const noexcept { return labels_; }
  double weight(std::size_t i) const { return weights_[i]; }

  friend bool operator==(const DiscreteProbabilitySpace&,
                         const DiscreteProbabilitySpace&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> weights_;
};

using SpacePtr = std::shared_ptr<const DiscreteProbabilitySpace>;

inline SpacePtr make_space(std::vector<std::string> labels,
                           std::vector<double> weights) {
  return std::make_shared<const DiscreteProbabilitySpace>(std::move(labels),
                                                          std::move(weights));
}

inline SpacePtr make_uniform_space(std::size_t n) {
  return std::make_shared<const DiscreteProbabilitySpace>(
      DiscreteProbabilitySpace::uniform(n));
}

// Real value per outcome; every value finite.
class RandomVariable {
 public:
  RandomVariable(SpacePtr space, std::vector<double> values)
      : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) throw InvalidArgument("random variable needs a space");
    if (values_.size() != space_->size())
      throw InvalidArgument("random variable needs one value per outcome");
    for (double v : values_)
      if (!std::isfinite(v))
        throw InvalidArgument("random variable values must be finite");
  }

  static RandomVariable constant(SpacePtr space, double c) {
    const std::size_t n = space ? space->size() : 0;
    return {std::move(space), std::vector<double>(n, c)};
  }

  const SpacePtr& space() const noexcept { return space_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  SpacePtr space_;
  std::vector<double> values_;
};

inline bool same_space(const RandomVariable& x, const RandomVariable& y) {
  return x.space() == y.space() || *x.space() == *y.space();
}

inline void require_same_space(const RandomVariable& x, const RandomVariable& y) {
  if (!same_space(x, y)) throw SpaceMismatch();
}

// a*x + b*y, outcome-wise.
inline RandomVariable linear_combination(double a, const RandomVariable& x,
                                         double b, const RandomVariable& y) {
  require_same_space(x, y);
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * x[i] + b * y[i];
  return {x.space(), std::move(v)};
}

inline double prob_event(const DiscreteProbabilitySpace& space,
                         const std::function<bool(std::size_t)>& predicate) {
  detail::CompensatedSum p;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (predicate(i)) p.add(space.weight(i));
  return p.value();
}

// P(|x - y| >= eps).
inline double deviation_probability(const RandomVariable& x,
                                    const RandomVariable& y, double eps) {
  require_same_space(x, y);
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  return prob_event(*x.space(),
                    [&](std::size_t i) { return std::abs(x[i] - y[i]) >= eps; });
}

inline double expectation(const RandomVariable& x) {
  detail::CompensatedSum e;
  const auto& space = *x.space();
  for (std::size_t i = 0; i < x.size(); ++i) e.add(space.weight(i) * x[i]);
  return e.value();
}

// E|x|^p for p >= 1.
inline double moment(const RandomVariable& x, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidOrder(p);
  detail::CompensatedSum e;
  const auto& space = *x.space();
  for (std::size_t i = 0; i < x.size(); ++i)
    e.add(space.weight(i) * std::pow(std::abs(x[i]), p));
  return e.value();
}

// Equal on every outcome of positive weight, up to an absolute tolerance.
inline bool almost_surely_equal(const RandomVariable& x, const RandomVariable& y,
                                double tol = 1e-9) {
  require_same_space(x, y);
  const auto& space = *x.space();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (space.weight(i) > 0.0 && !(std::abs(x[i] - y[i]) <= tol)) return false;
  return true;
}

}  // namespace gaugeprob
