#pragma once

#include <cmath>

#include "gaugeprob/error.hpp"

namespace gaugeprob {

// Closed integration domain [lower, upper] with lower < upper.
class Interval {
 public:
  Interval(double lower, double upper) : lower_(lower), upper_(upper) {
    if (!std::isfinite(lower) || !std::isfinite(upper))
      throw InvalidArgument("interval endpoints must be finite");
    if (!(lower < upper))
      throw InvalidArgument("interval requires lower < upper");
  }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  double width() const noexcept { return upper_ - lower_; }
  bool contains(double t) const noexcept { return lower_ <= t && t <= upper_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lower_;
  double upper_;
};

}  // namespace gaugeprob
