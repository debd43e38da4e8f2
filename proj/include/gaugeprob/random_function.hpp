#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/prob_space.hpp"
#include "gaugeprob/quadrature.hpp"
#include "gaugeprob/scalar_catalog.hpp"
#include "gaugeprob/tagged_division.hpp"

namespace gaugeprob {

// Sample-path evaluator: value of f(t, w) for outcome index w.
using PathFn = std::function<double(double t, std::size_t outcome)>;

// One term C_k(w) * phi_k(t) of a separable random function.
struct SeparableTerm {
  RandomVariable coefficient;
  ScalarFn basis;
  FamilyFactory family;  // empty: uniform halving
  std::string name;
};

// Map t -> random variable on a finite space, either separable
// sum_k C_k(w) phi_k(t) or given by a general pathwise evaluator. Carries the
// gauge families that suit its sample paths; the integrators intersect them
// into one shared family, since a single gauge has to serve every outcome.
class RandomFunction {
 public:
  static RandomFunction separable(SpacePtr space, std::vector<SeparableTerm> terms) {
    if (terms.empty()) throw InvalidArgument("separable form needs at least one term");
    for (const auto& term : terms) {
      if (!same_space(term.coefficient, RandomVariable::constant(space, 0.0)))
        throw SpaceMismatch();
      if (!term.basis) throw InvalidArgument("separable term needs a basis function");
    }
    RandomFunction f(std::move(space));
    f.terms_ = std::move(terms);
    for (const auto& term : f.terms_) {
      const auto values = term.coefficient.values();
      const bool used = std::any_of(values.begin(), values.end(),
                                    [](double c) { return c != 0.0; });
      if (used && term.family) f.families_.push_back(term.family);
    }
    return f;
  }

  // `families` lists the distinct gauge families suited to the sample paths
  // (empty: uniform halving).
  static RandomFunction pathwise(SpacePtr space, PathFn evaluator,
                                 std::vector<FamilyFactory> families = {}) {
    if (!evaluator) throw InvalidArgument("pathwise form needs an evaluator");
    RandomFunction f(std::move(space));
    f.evaluator_ = std::move(evaluator);
    f.families_ = std::move(families);
    return f;
  }

  const SpacePtr& space() const noexcept { return space_; }
  std::size_t outcomes() const noexcept { return space_->size(); }
  bool is_separable() const noexcept { return !terms_.empty(); }
  std::span<const SeparableTerm> terms() const noexcept { return terms_; }

  double operator()(double t, std::size_t outcome) const {
    if (!is_separable()) return evaluator_(t, outcome);
    double v = 0.0;
    for (const auto& term : terms_) v += term.coefficient[outcome] * term.basis(t);
    return v;
  }

  // f(t, .) as a random variable. Separable form evaluates each basis once.
  RandomVariable at(double t) const {
    std::vector<double> v(outcomes(), 0.0);
    if (is_separable()) {
      for (const auto& term : terms_) {
        const double phi = term.basis(t);
        for (std::size_t w = 0; w < v.size(); ++w) v[w] += term.coefficient[w] * phi;
      }
    }
    for (std::size_t w = 0; w < v.size(); ++w) {
      if (!is_separable()) v[w] = evaluator_(t, w);
      if (!std::isfinite(v[w]))
        throw EvaluationError(t, w, "random function is not finite");
    }
    return {space_, std::move(v)};
  }

  // Intersection of the path families, or uniform halving if none.
  GaugeFamily shared_family(const Interval& domain, double tol) const {
    if (families_.empty()) return uniform_family(domain);
    GaugeFamily shared = families_.front()(domain, tol);
    for (std::size_t i = 1; i < families_.size(); ++i)
      shared = family_intersection(std::move(shared), families_[i](domain, tol));
    return shared;
  }

 private:
  explicit RandomFunction(SpacePtr space) : space_(std::move(space)) {
    if (!space_) throw InvalidArgument("random function needs a space");
  }

  SpacePtr space_;
  std::vector<SeparableTerm> terms_;
  PathFn evaluator_;
  std::vector<FamilyFactory> families_;
};

// Outcome-wise Riemann sum S(f; d)(w) = sum_i f(tag_i, w) (x_{i+1} - x_i).
// Separable form: sum_k C_k(w) * riemann_sum_scalar(phi_k, d).
inline RandomVariable random_riemann_sum(const RandomFunction& f,
                                         const TaggedDivision& d) {
  const std::size_t n = f.outcomes();
  std::vector<double> out(n, 0.0);

  if (f.is_separable()) {
    for (const auto& term : f.terms()) {
      const double s = riemann_sum_scalar(term.basis, d);
      for (std::size_t w = 0; w < n; ++w) out[w] += term.coefficient[w] * s;
    }
    return {f.space(), std::move(out)};
  }

  std::vector<detail::CompensatedSum> acc(n);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double t = d.tag(i);
    const double len = d.length(i);
    for (std::size_t w = 0; w < n; ++w) {
      const double y = f(t, w);
      if (!std::isfinite(y)) throw EvaluationError(t, w, "sample path is not finite");
      acc[w].add(y * len);
    }
  }
  for (std::size_t w = 0; w < n; ++w) out[w] = acc[w].value();
  return {f.space(), std::move(out)};
}

}  // namespace gaugeprob
