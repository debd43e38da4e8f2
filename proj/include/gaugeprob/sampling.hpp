#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/prob_space.hpp"

namespace gaugeprob {

// Name and version of the deterministic stream. Bump the version whenever the
// mapping from (seed, stream) to values changes; reports record it.
inline constexpr std::string_view kGeneratorName = "mt19937_64+splitmix64/v1";

// std::mt19937_64 output is fixed by the standard; the distributions below
// are implemented here (std::*_distribution is not portable across standard
// libraries).
class Generator {
 public:
  Generator(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; one draw per call keeps the stream position simple.
  double normal(double mu, double sigma) {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return mu + sigma * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * std::numbers::pi * u2);
  }

  // Uniform integer in [lo, hi] by rejection.
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next(); while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

// Parsed form of a distribution spec string "<name> [p1|p2|...]".
//
//   constant c          every outcome c
//   two-point x|y       outcome i gets x for even i, y for odd i
//   points v1|...|vk    outcome i gets v_{i mod k}
//   uniform01           U[0, 1)
//   uniform lo|hi       U[lo, hi)
//   normal mu|sigma     N(mu, sigma^2)
//   integers lo|hi      uniform integer in [lo, hi]
struct DistributionSpec {
  std::string name;
  std::vector<double> params;

  static DistributionSpec parse(std::string_view text) {
    DistributionSpec spec;
    const auto space = text.find(' ');
    spec.name = std::string(text.substr(0, space));
    if (space != std::string_view::npos) {
      std::string rest(text.substr(space + 1));
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, '|')) {
        try {
          std::size_t used = 0;
          spec.params.push_back(std::stod(item, &used));
          if (item.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument(item);
        } catch (const std::exception&) {
          throw InvalidArgument("bad distribution parameter '" + item + "' in '" +
                                std::string(text) + "'");
        }
      }
    }
    spec.validate(text);
    return spec;
  }

  std::vector<double> draw(std::size_t n, Generator& gen) const {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (name == "constant") v[i] = params[0];
      else if (name == "two-point" || name == "points") v[i] = params[i % params.size()];
      else if (name == "uniform01") v[i] = gen.uniform01();
      else if (name == "uniform") v[i] = gen.uniform(params[0], params[1]);
      else if (name == "normal") v[i] = gen.normal(params[0], params[1]);
      else v[i] = static_cast<double>(gen.integer(static_cast<std::int64_t>(params[0]),
                                                  static_cast<std::int64_t>(params[1])));
    }
    return v;
  }

 private:
  void validate(std::string_view text) const {
    auto need = [&](std::size_t count) {
      if (params.size() != count)
        throw InvalidArgument("distribution '" + std::string(text) + "' expects " +
                              std::to_string(count) + " parameter(s)");
    };
    if (name == "constant") need(1);
    else if (name == "two-point") need(2);
    else if (name == "points") {
      if (params.empty()) throw InvalidArgument("'points' needs at least one value");
    } else if (name == "uniform01") need(0);
    else if (name == "uniform") {
      need(2);
      if (!(params[0] < params[1])) throw InvalidArgument("uniform needs lo < hi");
    } else if (name == "normal") {
      need(2);
      if (!(params[1] >= 0.0)) throw InvalidArgument("normal needs sigma >= 0");
    } else if (name == "integers") {
      need(2);
      if (!(params[0] <= params[1])) throw InvalidArgument("integers needs lo <= hi");
    } else {
      throw InvalidArgument("unknown distribution '" + std::string(text) + "'");
    }
  }
};

struct SampledEnsemble {
  SpacePtr space;
  RandomVariable variable;
};

// Draws `n` values for an existing space. `stream` separates independent
// variables drawn under one seed.
inline RandomVariable sample_variable(const SpacePtr& space,
                                      std::string_view distribution,
                                      std::uint64_t seed, std::uint64_t stream = 0) {
  const auto spec = DistributionSpec::parse(distribution);
  Generator gen(seed, stream);
  return {space, spec.draw(space->size(), gen)};
}

// Uniform-weight n-outcome space plus one variable drawn from `distribution`.
inline SampledEnsemble sample_space(std::string_view distribution, std::size_t n,
                                    std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample size must be >= 1");
  auto space = make_uniform_space(n);
  auto variable = sample_variable(space, distribution, seed, 0);
  return {std::move(space), std::move(variable)};
}

}  // namespace gaugeprob
