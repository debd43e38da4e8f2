#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/interval.hpp"

namespace gaugeprob {

// Uniform halving everywhere except on the finite set `points`, where the
// width is pinched to tol * 2^-m / |points|. Riemann sums over sharp
// divisions then see at most ~tol * 2^-m of mass from pieces tagged in the
// set, which is how a gauge integral ignores finitely many points.
inline GaugeFamily pinching_family(std::vector<double> points,
                                   const Interval& domain, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const double width = domain.width();
  const double pinch = points.empty() ? width : tol / static_cast<double>(points.size());
  auto set = std::make_shared<const std::vector<double>>(std::move(points));
  return [set, width, pinch](int level) {
    return gauge_from_delta([set, width, pinch, level](double t) {
      if (std::binary_search(set->begin(), set->end(), t)) return std::ldexp(pinch, -level);
      return uniform_width(width, level);
    });
  };
}

// Family for integrands with an oscillatory singularity at `origin` such as
// (t^2 sin(1/t^2))'. Away from the origin the width follows
// 2^-m * min(b - a, (t - origin)^2 / 2); at the origin it is 2 * 2^-m, so the
// piece tagged there has length about 2^-m while the oscillation near it is
// still resolved (phase change per piece stays O(1)).
inline GaugeFamily origin_singular_family(const Interval& domain, double origin = 0.0) {
  const double width = domain.width();
  return [width, origin](int level) {
    const double scale = std::ldexp(1.0, -level);
    return gauge_from_delta([width, origin, scale](double t) {
      const double r = t - origin;
      if (r == 0.0) return 2.0 * scale;
      return scale * std::min(width, 0.5 * r * r);
    });
  };
}

}  // namespace gaugeprob
