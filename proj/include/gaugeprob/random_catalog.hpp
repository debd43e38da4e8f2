#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/prob_space.hpp"
#include "gaugeprob/random_function.hpp"
#include "gaugeprob/sampling.hpp"
#include "gaugeprob/scalar_catalog.hpp"

namespace gaugeprob {

// A named random function with everything the checks need: its domain, the
// tolerance it is meant to be integrated at, an antiderivative when one is
// known in closed form, and a dominating variable when the paths are bounded.
struct RandomEntry {
  std::string id;
  std::string description;
  Interval domain;
  RandomFunction function;
  double tol;
  double eps = 1e-3;
  double eta = 1e-2;
  std::optional<RandomFunction> antiderivative;
  std::optional<RandomVariable> dominator;
};

inline const std::vector<std::string>& random_catalog_ids() {
  static const std::vector<std::string> ids = {
      "zero",          "linear-coeff",   "pathwise-linear",   "two-term",
      "square-ftc",    "constant-coeff", "sampled-poly",      "indicator-coeff",
      "oscillating-coeff", "fubini-violating"};
  return ids;
}

namespace detail {

inline SeparableTerm catalog_term(RandomVariable c, std::string_view basis_id) {
  const auto& e = scalar_entry(basis_id);
  return {std::move(c), e.fn, e.family, std::string(basis_id)};
}

inline SeparableTerm plain_term(RandomVariable c, ScalarFn basis, std::string name) {
  return {std::move(c), std::move(basis), {}, std::move(name)};
}

inline RandomVariable abs_of(const RandomVariable& x, double scale = 1.0) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scale * std::abs(x[i]);
  return {x.space(), std::move(v)};
}

}  // namespace detail

// `seed` only matters for entries with sampled coefficients.
inline RandomEntry random_entry(std::string_view id, std::uint64_t seed = 0) {
  using detail::catalog_term;
  using detail::plain_term;
  const Interval unit(0.0, 1.0);

  if (id == "zero") {
    auto space = make_uniform_space(2);
    auto c = RandomVariable::constant(space, 0.0);
    return {"zero", "f = 0", unit,
            RandomFunction::separable(space, {catalog_term(c, "monomial0")}), 1e-9,
            1e-3, 1e-2,
            RandomFunction::separable(space, {catalog_term(c, "monomial1")}),
            RandomVariable::constant(space, 0.0)};
  }
  if (id == "linear-coeff" || id == "pathwise-linear" || id == "fubini-violating") {
    auto space = make_space({"w0", "w1"}, {0.5, 0.5});
    RandomVariable c(space, {1.0, 2.0});
    auto F = RandomFunction::separable(
        space, {plain_term(c, [](double t) { return 0.5 * t * t; }, "t^2/2")});
    if (id == "pathwise-linear") {
      const auto& basis = scalar_entry("monomial1");
      auto f = RandomFunction::pathwise(
          space, [c](double t, std::size_t w) { return c[w] * t; }, {basis.family});
      return {"pathwise-linear", "f(t, w) = C(w) t as a pathwise evaluator, C = (1, 2)",
              unit, std::move(f), 1e-9, 1e-3, 1e-2, std::move(F),
              RandomVariable::constant(space, 2.0)};
    }
    auto f = RandomFunction::separable(space, {catalog_term(c, "monomial1")});
    if (id == "fubini-violating")
      return {"fubini-violating",
              "f(t, w) = C(w) t with C = (1, 2) and a dominator A = (2, 0.5) that "
              "outcome w1 exceeds for t > 0.25",
              unit, std::move(f), 1e-9, 1e-3, 1e-2, std::move(F),
              RandomVariable(space, {2.0, 0.5})};
    return {"linear-coeff", "f(t, w) = C(w) t on [0, 1], C = (1, 2) uniform", unit,
            std::move(f), 1e-9, 1e-3, 1e-2, std::move(F),
            RandomVariable::constant(space, 2.0)};
  }
  if (id == "two-term") {
    auto space = make_uniform_space(2);
    RandomVariable c1(space, {1.0, 1.0});
    RandomVariable c2(space, {0.0, 3.0});
    auto f = RandomFunction::separable(
        space, {catalog_term(c1, "monomial0"), catalog_term(c2, "monomial1")});
    auto F = RandomFunction::separable(
        space, {plain_term(c1, [](double t) { return t; }, "t"),
                plain_term(c2, [](double t) { return 0.5 * t * t; }, "t^2/2")});
    // max_k |C_k| * sum_k sup |phi_k| = max(|C1|, |C2|) * 2
    RandomVariable a(space, {2.0, 6.0});
    return {"two-term", "f = C1 + C2 t, C1 = (1, 1), C2 = (0, 3)", unit, std::move(f),
            1e-9, 1e-3, 1e-2, std::move(F), std::move(a)};
  }
  if (id == "square-ftc") {
    auto space = make_uniform_space(3);
    RandomVariable c(space, {0.5, 1.0, 1.5});
    auto f = RandomFunction::separable(
        space, {plain_term(c, [](double t) { return 2.0 * t; }, "2t")});
    auto F = RandomFunction::separable(space, {catalog_term(c, "monomial2")});
    return {"square-ftc", "f(t, w) = 2 C(w) t, F = C t^2, C = (0.5, 1, 1.5)", unit,
            std::move(f), 1e-9, 1e-2, 1e-2, std::move(F), detail::abs_of(c, 2.0)};
  }
  if (id == "constant-coeff") {
    auto space = make_space({"w0", "w1", "w2"}, {0.25, 0.25, 0.5});
    RandomVariable c(space, {-1.0, 0.5, 2.0});
    auto f = RandomFunction::separable(
        space, {plain_term(c, [](double) { return 1.0; }, "1")});
    auto F = RandomFunction::separable(
        space, {plain_term(c, [](double t) { return t; }, "t")});
    return {"constant-coeff", "f(t, w) = C(w) on [0, 2], C = (-1, 0.5, 2)",
            Interval(0.0, 2.0), std::move(f), 1e-9, 1e-3, 1e-2, std::move(F),
            detail::abs_of(c)};
  }
  if (id == "sampled-poly") {
    auto space = make_uniform_space(1000);
    auto c1 = sample_variable(space, "uniform01", seed, 1);
    auto c2 = sample_variable(space, "uniform -1|1", seed, 2);
    auto f = RandomFunction::separable(
        space, {catalog_term(c1, "monomial2"), catalog_term(c2, "sin2pi")});
    auto F = RandomFunction::separable(
        space,
        {plain_term(c1, [](double t) { return t * t * t / 3.0; }, "t^3/3"),
         plain_term(c2,
                    [](double t) {
                      return (1.0 - std::cos(2.0 * std::numbers::pi * t)) /
                             (2.0 * std::numbers::pi);
                    },
                    "(1-cos(2 pi t))/(2 pi)")});
    std::vector<double> a(space->size());
    for (std::size_t w = 0; w < a.size(); ++w)
      a[w] = 2.0 * std::max(std::abs(c1[w]), std::abs(c2[w]));
    return {"sampled-poly",
            "f = C1 t^2 + C2 sin(2 pi t), C1 ~ U[0,1), C2 ~ U[-1,1), 1000 seeded outcomes",
            unit, std::move(f), 1e-9, 1e-3, 1e-2, std::move(F),
            RandomVariable(space, std::move(a))};
  }
  if (id == "indicator-coeff") {
    auto space = make_uniform_space(3);
    RandomVariable c(space, {1.0, 2.0, 3.0});
    auto f = RandomFunction::separable(space, {catalog_term(c, "indicator100")});
    return {"indicator-coeff",
            "f(t, w) = C(w) 1_S(t), S the 100-point dyadic set, C = (1, 2, 3)", unit,
            std::move(f), 1e-9, 1e-3, 1e-2, std::nullopt, detail::abs_of(c)};
  }
  if (id == "oscillating-coeff") {
    auto space = make_uniform_space(2);
    RandomVariable c(space, {0.5, 1.0});
    auto f = RandomFunction::separable(space, {catalog_term(c, "fprime-oscillating")});
    auto F = RandomFunction::separable(space, {catalog_term(c, "f-oscillating")});
    return {"oscillating-coeff",
            "f(t, w) = C(w) (t^2 sin(1/t^2))', C = (0.5, 1); unbounded near 0", unit,
            std::move(f), 1e-6, 1e-2, 1e-2, std::move(F), std::nullopt};
  }
  throw CatalogMiss(std::string(id));
}

}  // namespace gaugeprob
