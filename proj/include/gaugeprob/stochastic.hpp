#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugeprob/cousin.hpp"
#include "gaugeprob/error.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/prob_space.hpp"
#include "gaugeprob/quadrature.hpp"
#include "gaugeprob/random_function.hpp"
#include "gaugeprob/sampling.hpp"
#include "gaugeprob/tagged_division.hpp"

namespace gaugeprob {

// One (eps, eta) pair of the convergence-in-probability condition
// P(|S - I| >= eps) < eta.
struct TailTarget {
  double eps;
  double eta;
};

inline std::vector<TailTarget> default_tail_grid() {
  return {{1e-2, 1e-2}, {1e-3, 1e-2}, {1e-4, 1e-2}};
}

// Evidence row: on the named division (sharp for the gauge of `level`) the
// tail P(|S - I| >= eps) was `achieved_tail`.
struct CertificateRow {
  std::string division;
  int level;
  double eps;
  double eta;
  double achieved_tail;
  double mesh_bound;
};

enum class IntegrationMethod { Separable, PathwiseEnsemble };

inline const char* to_string(IntegrationMethod m) {
  return m == IntegrationMethod::Separable ? "separable" : "pathwise-ensemble";
}

struct StochasticIntegralResult {
  explicit StochasticIntegralResult(RandomVariable i) : integral(std::move(i)) {}

  RandomVariable integral;
  std::vector<CertificateRow> certificate;
  IntegrationMethod method = IntegrationMethod::PathwiseEnsemble;
  bool converged = false;
  bool verified = false;
  int refinement_levels = 0;
  // Level whose gauge the certificate rows were taken at; final_division and
  // final_mesh_bound belong to it.
  int verification_level = 0;
  double final_mesh_bound = 0.0;
  std::shared_ptr<const TaggedDivision> final_division;
  // Separable only: the scalar quadrature behind each basis term.
  std::vector<QuadratureResult> term_results;
};

struct StochasticOptions {
  int max_levels = 40;
  PartitionLimits limits{};
  // Number of seeded random re-taggings of the final division used as extra
  // verification divisions.
  int retags = 2;
  // Levels past the converged one searched for a gauge whose verification
  // divisions all meet the tail targets.
  int verify_levels = 12;
  std::uint64_t seed = 0;
  // Tail targets for integrate_separable's certificate.
  std::vector<TailTarget> grid = default_tail_grid();
};

// Re-tags every piece with a uniformly drawn point, keeping the new tag only
// where the piece stays inside gamma(tag). The result is again g-sharp.
inline TaggedDivision random_retag(const TaggedDivision& d, const Gauge& g,
                                   Generator& gen) {
  std::vector<double> tags(d.tags().begin(), d.tags().end());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double t = gen.uniform(d.left(i), d.right(i));
    if (g.covers(t, d.left(i), d.right(i))) tags[i] = t;
  }
  return d.retagged(std::move(tags));
}

namespace detail {

inline std::vector<CertificateRow> certify(const RandomFunction& f,
                                           const RandomVariable& integral,
                                           const TaggedDivision& d, const Gauge& g,
                                           int level,
                                           const std::vector<TailTarget>& targets,
                                           const StochasticOptions& opts) {
  std::vector<std::pair<std::string, RandomVariable>> sums;
  sums.emplace_back("constructed", random_riemann_sum(f, d));
  Generator gen(opts.seed, 0x7e7a6ULL + static_cast<std::uint64_t>(level));
  for (int r = 1; r <= opts.retags; ++r)
    sums.emplace_back("retagged-" + std::to_string(r),
                      random_riemann_sum(f, random_retag(d, g, gen)));

  std::vector<CertificateRow> rows;
  const double mesh = d.mesh();
  for (const auto& target : targets)
    for (const auto& [name, s] : sums)
      rows.push_back({name, level, target.eps, target.eta,
                      deviation_probability(s, integral, target.eps), mesh});
  return rows;
}

inline bool all_rows_pass(const std::vector<CertificateRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const CertificateRow& r) {
    return r.achieved_tail < r.eta;
  });
}

struct Verification {
  std::vector<CertificateRow> rows;
  bool passed = false;
  int level = 0;
  std::shared_ptr<const TaggedDivision> division;
};

// Tries the gauges of levels first, first + 1, ..., first + opts.verify_levels
// and stops at the first one whose verification divisions all pass. Returns
// the last attempt otherwise. `division` is the already built division of
// level `first`, if any.
inline Verification verify_tail(const RandomFunction& f, const RandomVariable& integral,
                                const GaugeFamily& gauges, const Interval& domain,
                                int first, std::shared_ptr<const TaggedDivision> division,
                                const std::vector<TailTarget>& targets,
                                const StochasticOptions& opts) {
  Verification v;
  for (int m = first; m <= first + std::max(opts.verify_levels, 0); ++m) {
    const Gauge g = gauges(m);
    std::shared_ptr<const TaggedDivision> d = division;
    if (m != first || !d) {
      try {
        d = std::make_shared<const TaggedDivision>(cousin_partition(g, domain, opts.limits));
      } catch (const PartitionLimitExceeded&) {
        if (!v.division) throw;
        break;
      }
    }
    v.rows = certify(f, integral, *d, g, m, targets, opts);
    v.passed = all_rows_pass(v.rows);
    v.level = m;
    v.division = std::move(d);
    if (v.passed) break;
  }
  return v;
}

inline void apply(StochasticIntegralResult& result, Verification v) {
  result.certificate = std::move(v.rows);
  result.verified = result.converged && v.passed;
  result.verification_level = v.level;
  result.final_mesh_bound = v.division->mesh();
  result.final_division = std::move(v.division);
}

inline void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw InvalidArgument(std::string(name) + " must be positive");
}

}  // namespace detail

// Exact rule for separable integrands: I(w) = sum_k C_k(w) * I_k with
// I_k the gauge integral of phi_k under its paired family. The certificate
// checks the tail condition for every target in opts.grid on sharp divisions
// of the combined gauge, starting at the deepest level any term needed.
inline StochasticIntegralResult integrate_separable(const RandomFunction& f,
                                                    const Interval& domain,
                                                    double tol,
                                                    const StochasticOptions& opts = {}) {
  if (!f.is_separable()) throw InvalidArgument("integrate_separable needs a separable function");
  detail::require_positive(tol, "tol");

  QuadratureOptions qopts;
  qopts.tol = tol;
  qopts.max_levels = opts.max_levels;
  qopts.limits = opts.limits;

  StochasticIntegralResult result(RandomVariable::constant(f.space(), 0.0));
  result.method = IntegrationMethod::Separable;
  std::vector<std::size_t> failed;
  int final_level = 0;
  for (std::size_t k = 0; k < f.terms().size(); ++k) {
    const auto& term = f.terms()[k];
    const GaugeFamily family =
        term.family ? term.family(domain, tol) : uniform_family(domain);
    result.term_results.push_back(kh_integrate(term.basis, domain, qopts, family));
    if (!result.term_results.back().converged) failed.push_back(k);
    final_level = std::max(final_level, result.term_results.back().refinement_levels - 1);
  }
  if (!failed.empty()) {
    std::string msg = "basis term(s)";
    for (auto k : failed) msg += " " + std::to_string(k);
    throw NonConvergence(msg + " did not converge", failed);
  }

  std::vector<double> values(f.outcomes(), 0.0);
  for (std::size_t k = 0; k < f.terms().size(); ++k) {
    const auto& c = f.terms()[k].coefficient;
    const double ik = result.term_results[k].value;
    for (std::size_t w = 0; w < values.size(); ++w) values[w] += c[w] * ik;
  }
  result.integral = RandomVariable(f.space(), std::move(values));
  result.converged = true;
  result.refinement_levels = final_level + 1;

  detail::apply(result, detail::verify_tail(f, result.integral, f.shared_family(domain, tol),
                                            domain, final_level, nullptr, opts.grid, opts));
  return result;
}

// Pathwise gauge integration with one gauge family shared by every outcome.
// Level m builds a sharp division for the level-m gauge and the outcome-wise
// Riemann sums; refinement stops when every path moved by at most tol. The
// result is verified when some level of the family, from the one before the
// converged one on, has P(|S - I| >= eps) < eta on its division and on seeded re-taggings.
inline StochasticIntegralResult integrate_pathwise(
    const RandomFunction& f, const Interval& domain, double eps, double eta,
    double tol, const std::optional<GaugeFamily>& family = {},
    const StochasticOptions& opts = {}) {
  detail::require_positive(eps, "eps");
  detail::require_positive(eta, "eta");
  detail::require_positive(tol, "tol");
  if (opts.max_levels < 1) throw InvalidArgument("level cap must be >= 1");
  const GaugeFamily gauges = family ? *family : f.shared_family(domain, tol);

  StochasticIntegralResult result(RandomVariable::constant(f.space(), 0.0));
  result.method = IntegrationMethod::PathwiseEnsemble;

  std::optional<RandomVariable> previous;
  std::shared_ptr<const TaggedDivision> last;
  std::shared_ptr<const TaggedDivision> before_last;
  std::vector<std::size_t> moving;
  int level = 0;
  for (int m = 0; m < opts.max_levels; ++m) {
    std::shared_ptr<const TaggedDivision> d;
    try {
      d = std::make_shared<const TaggedDivision>(cousin_partition(gauges(m), domain, opts.limits));
    } catch (const PartitionLimitExceeded&) {
      if (!previous) throw;
      break;
    }
    RandomVariable sum = random_riemann_sum(f, *d);
    level = m;
    before_last = std::move(last);
    last = std::move(d);
    if (previous) {
      moving.clear();
      for (std::size_t w = 0; w < sum.size(); ++w)
        if (!(std::abs(sum[w] - (*previous)[w]) <= tol)) moving.push_back(w);
      if (moving.empty()) {
        result.converged = true;
        previous = std::move(sum);
        break;
      }
    }
    previous = std::move(sum);
  }
  if (!result.converged) {
    std::string msg = "sample path(s) did not converge:";
    for (std::size_t i = 0; i < moving.size() && i < 16; ++i)
      msg += " " + std::to_string(moving[i]);
    if (moving.size() > 16) msg += " ...";
    throw NonConvergence(msg, moving);
  }

  result.integral = std::move(*previous);
  result.refinement_levels = level + 1;
  // Level - 1 is within tol of I as well, so the search starts there.
  detail::apply(result, detail::verify_tail(f, result.integral, gauges, domain, level - 1,
                                            std::move(before_last), {{eps, eta}}, opts));
  return result;
}

// Same as integrate_pathwise restricted to constant-width gauges
// delta_m = (b - a) 2^-m: Riemann integration in probability.
inline StochasticIntegralResult integrate_riemann_in_probability(
    const RandomFunction& f, const Interval& domain, double eps, double eta,
    double tol, const StochasticOptions& opts = {}) {
  return integrate_pathwise(f, domain, eps, eta, tol, uniform_family(domain), opts);
}

struct TailProfileRow {
  int level;
  std::size_t pieces;
  double mesh;
  double eps;
  double eta;
  double tail;
};

// Tail P(|S_m - I| >= eps) on the constructed division of each level
// 0..levels-1 of `family`.
inline std::vector<TailProfileRow> tail_profile(const RandomFunction& f,
                                                const RandomVariable& integral,
                                                const Interval& domain,
                                                const GaugeFamily& family, int levels,
                                                const std::vector<TailTarget>& targets,
                                                const PartitionLimits& limits = {}) {
  std::vector<TailProfileRow> rows;
  for (int m = 0; m < levels; ++m) {
    const TaggedDivision d = cousin_partition(family(m), domain, limits);
    const RandomVariable s = random_riemann_sum(f, d);
    for (const auto& t : targets)
      rows.push_back({m, d.size(), d.mesh(), t.eps, t.eta,
                      deviation_probability(s, integral, t.eps)});
  }
  return rows;
}

}  // namespace gaugeprob
