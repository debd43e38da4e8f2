#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaugeprob {

// Base of every error raised by the library. Callers that only care about
// "the computation could not be carried out" catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (non-positive tolerance, empty
// domain, eta <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A gauge produced a non-positive or non-finite width.
class InvalidGauge : public Error {
 public:
  InvalidGauge(double t, const std::string& what)
      : Error("invalid gauge at t=" + std::to_string(t) + ": " + what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

// Bisection did not terminate within the depth or piece budget.
class PartitionLimitExceeded : public Error {
 public:
  using Error::Error;
};

// An integrand returned a non-finite value (or threw) at a tag.
class EvaluationError : public Error {
 public:
  static constexpr std::size_t kNoOutcome = static_cast<std::size_t>(-1);

  EvaluationError(double t, std::size_t outcome, const std::string& what)
      : Error(describe(t, outcome, what)), t_(t), outcome_(outcome) {}

  double t() const noexcept { return t_; }
  std::size_t outcome() const noexcept { return outcome_; }

 private:
  static std::string describe(double t, std::size_t outcome,
                              const std::string& what) {
    std::string msg = "evaluation failed at t=" + std::to_string(t);
    if (outcome != kNoOutcome) msg += " outcome=" + std::to_string(outcome);
    return msg + ": " + what;
  }

  double t_;
  std::size_t outcome_;
};

// Two random variables live on different probability spaces.
class SpaceMismatch : public Error {
 public:
  SpaceMismatch() : Error("random variables are defined on different spaces") {}
};

// Moment order below 1.
class InvalidOrder : public Error {
 public:
  explicit InvalidOrder(double p)
      : Error("moment order must be >= 1, got " + std::to_string(p)) {}
};

// One or more components failed to converge within the level cap. `which`
// names basis indices (separable integration) or outcome indices (pathwise).
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::vector<std::size_t> which)
      : Error(what), which_(std::move(which)) {}
  const std::vector<std::size_t>& which() const noexcept { return which_; }

 private:
  std::vector<std::size_t> which_;
};

// The dominating-variable hypothesis |f(t, w)| <= A(w) a.s. failed at t.
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(double t, std::vector<std::size_t> outcomes)
      : Error(describe(t, outcomes)), t_(t), outcomes_(std::move(outcomes)) {}

  double t() const noexcept { return t_; }
  const std::vector<std::size_t>& outcomes() const noexcept { return outcomes_; }

 private:
  static std::string describe(double t, const std::vector<std::size_t>& o) {
    std::string msg = "domination hypothesis violated at t=" + std::to_string(t) +
                      " for outcome(s)";
    for (auto i : o) msg += " " + std::to_string(i);
    return msg;
  }

  double t_;
  std::vector<std::size_t> outcomes_;
};

// Unknown catalog identifier.
class CatalogMiss : public Error {
 public:
  explicit CatalogMiss(const std::string& id)
      : Error("unknown catalog id '" + id + "'"), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

// Malformed scenario or data file; `field` is a JSON pointer-ish path.
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& field, const std::string& what)
      : Error("scenario field '" + field + "': " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace gaugeprob
