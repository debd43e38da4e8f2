#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/interval.hpp"

namespace gaugeprob {

// a = x_0 < x_1 < ... < x_n = b with one tag per piece, x_i <= tag_i <= x_{i+1}.
// Validated on construction; immutable afterwards.
class TaggedDivision {
 public:
  TaggedDivision(std::vector<double> points, std::vector<double> tags)
      : points_(std::move(points)), tags_(std::move(tags)) {
    if (points_.size() < 2)
      throw InvalidArgument("division needs at least one piece");
    if (tags_.size() + 1 != points_.size())
      throw InvalidArgument("division needs exactly one tag per piece");
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      if (!(points_[i] < points_[i + 1]))
        throw InvalidArgument("division points must be strictly increasing");
      if (!(points_[i] <= tags_[i] && tags_[i] <= points_[i + 1]))
        throw InvalidArgument("tag outside its piece");
    }
  }

  std::size_t size() const noexcept { return tags_.size(); }
  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> tags() const noexcept { return tags_; }

  double left(std::size_t i) const { return points_[i]; }
  double right(std::size_t i) const { return points_[i + 1]; }
  double tag(std::size_t i) const { return tags_[i]; }
  double length(std::size_t i) const { return points_[i + 1] - points_[i]; }

  Interval domain() const { return {points_.front(), points_.back()}; }

  double mesh() const {
    double m = 0.0;
    for (std::size_t i = 0; i < size(); ++i) m = std::max(m, length(i));
    return m;
  }

  // Same points, new tags (validated).
  TaggedDivision retagged(std::vector<double> tags) const {
    return {points_, std::move(tags)};
  }

 private:
  std::vector<double> points_;
  std::vector<double> tags_;
};

// [x_i, x_{i+1}] subset of gamma(tag_i) for every piece. Exact comparisons.
inline bool is_sharp(const TaggedDivision& d, const Gauge& g) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!g.covers(d.tag(i), d.left(i), d.right(i))) return false;
  return true;
}

}  // namespace gaugeprob
