#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <utility>

#include "gaugeprob/error.hpp"
#include "gaugeprob/interval.hpp"

namespace gaugeprob {

// Left and right reach of a gauge at a point: gamma(t) = (t - left, t + right).
struct GaugeWidths {
  double left;
  double right;
};

// Open-interval-valued fineness constraint on a domain. Widths are validated
// on every evaluation, so a bad width function surfaces as InvalidGauge at
// the first point where it misbehaves.
class Gauge {
 public:
  using WidthFn = std::function<GaugeWidths(double)>;

  explicit Gauge(WidthFn widths)
      : widths_(std::make_shared<const WidthFn>(std::move(widths))) {}

  GaugeWidths widths(double t) const {
    const GaugeWidths w = (*widths_)(t);
    if (!(w.left > 0.0) || !(w.right > 0.0) || !std::isfinite(w.left) ||
        !std::isfinite(w.right))
      throw InvalidGauge(t, "widths must be finite and positive");
    return w;
  }

  // [lo, hi] subset of gamma(tag), strict on both open ends.
  bool covers(double tag, double lo, double hi) const {
    const GaugeWidths w = widths(tag);
    return tag - w.left < lo && hi < tag + w.right;
  }

 private:
  // Shared so copies of a gauge (intersections, families) stay cheap.
  std::shared_ptr<const WidthFn> widths_;
};

// Width function for fineness in the "x_{i+1} - x_i < delta(xi_i)" sense.
using DeltaFn = std::function<double(double)>;

// Gauge indexed by refinement level; widths should shrink to 0 as level grows.
using GaugeFamily = std::function<Gauge(int level)>;

// Symmetric gauge (t - delta/2, t + delta/2).
inline Gauge gauge_from_delta(DeltaFn delta) {
  return Gauge([delta = std::move(delta)](double t) {
    const double d = delta(t);
    if (!(d > 0.0) || !std::isfinite(d))
      throw InvalidGauge(t, "delta must be finite and positive");
    return GaugeWidths{d / 2.0, d / 2.0};
  });
}

// delta(t) = min(left, right): any piece shorter than delta(tag) that contains
// its tag lies inside gamma(tag).
inline DeltaFn delta_from_gauge(Gauge g) {
  return [g = std::move(g)](double t) {
    const GaugeWidths w = g.widths(t);
    return std::min(w.left, w.right);
  };
}

// Componentwise intersection; any division sharp for the result is sharp for
// both inputs.
inline Gauge gauge_intersection(Gauge g1, Gauge g2) {
  return Gauge([g1 = std::move(g1), g2 = std::move(g2)](double t) {
    const GaugeWidths a = g1.widths(t);
    const GaugeWidths b = g2.widths(t);
    return GaugeWidths{std::min(a.left, b.left), std::min(a.right, b.right)};
  });
}

inline Gauge constant_gauge(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw InvalidArgument("constant gauge width must be finite and positive");
  return gauge_from_delta([delta](double) { return delta; });
}

// Constant widths of uniform halving at level m: 3/4 (b - a) 2^-m. Bisection
// pieces of length (b - a) 2^-(m+1) take their midpoint as tag; the 3/4 keeps
// the left-tag test away from an exact tie, which rounding would otherwise
// decide piece by piece on domains like [0, pi].
inline double uniform_width(double domain_width, int level) {
  return 0.75 * std::ldexp(domain_width, -level);
}

// Plain Riemann-style refinement: 2^(m+1) midpoint-tagged pieces at level m.
inline GaugeFamily uniform_family(const Interval& domain) {
  const double width = domain.width();
  return [width](int level) { return constant_gauge(uniform_width(width, level)); };
}

// delta_m = (b - a) * factor^-m with an arbitrary shrink factor > 1.
inline GaugeFamily geometric_family(const Interval& domain, double factor) {
  if (!(factor > 1.0)) throw InvalidArgument("shrink factor must exceed 1");
  const double width = domain.width();
  return [width, factor](int level) {
    return constant_gauge(width * std::pow(factor, -level));
  };
}

// Every width multiplied by `factor` in (0, 1].
inline GaugeFamily scaled_family(GaugeFamily f, double factor) {
  if (!(factor > 0.0 && factor <= 1.0)) throw InvalidArgument("scale factor must be in (0, 1]");
  return [f = std::move(f), factor](int level) {
    return Gauge([g = f(level), factor](double t) {
      const GaugeWidths w = g.widths(t);
      return GaugeWidths{factor * w.left, factor * w.right};
    });
  };
}

inline GaugeFamily family_intersection(GaugeFamily f1, GaugeFamily f2) {
  return [f1 = std::move(f1), f2 = std::move(f2)](int level) {
    return gauge_intersection(f1(level), f2(level));
  };
}

}  // namespace gaugeprob
