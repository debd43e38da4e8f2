#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <vector>

#include "gaugeprob/gauge.hpp"
#include "gaugeprob/interval.hpp"
#include "gaugeprob/tagged_division.hpp"

namespace gaugeprob::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Constant symmetric gauge with delta in [1e-3, 0.5], or an asymmetric gauge
// shrinking towards a random point p like c |t - p| + floor.
inline Gauge random_gauge(std::mt19937_64& rng, const Interval& domain, bool shrinking) {
  if (!shrinking) return constant_gauge(uniform(rng, 1e-3, 0.5));
  const double p = uniform(rng, domain.lower(), domain.upper());
  const double cl = uniform(rng, 0.05, 1.0);
  const double cr = uniform(rng, 0.05, 1.0);
  const double floor = std::pow(10.0, uniform(rng, -6.0, -2.0));
  return Gauge([=](double t) {
    const double r = std::abs(t - p);
    return GaugeWidths{cl * r + floor, cr * r + floor};
  });
}

// n pieces with uniformly drawn interior points and tags.
inline TaggedDivision random_division(std::mt19937_64& rng, const Interval& domain,
                                      std::size_t n) {
  std::vector<double> pts{domain.lower(), domain.upper()};
  while (pts.size() < n + 1) {
    pts.push_back(uniform(rng, domain.lower(), domain.upper()));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  std::vector<double> tags;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const int kind = static_cast<int>(rng() % 4);
    tags.push_back(kind == 0 ? pts[i] : kind == 1 ? pts[i + 1] : uniform(rng, pts[i], pts[i + 1]));
    tags.back() = std::clamp(tags.back(), pts[i], pts[i + 1]);
  }
  return {std::move(pts), std::move(tags)};
}

// Units in the last place at x.
inline double ulp(double x) {
  return std::nextafter(std::abs(x), std::numeric_limits<double>::infinity()) - std::abs(x);
}

}  // namespace gaugeprob::testing
