#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gaugeprob/error.hpp"
#include "gaugeprob/gauge.hpp"
#include "gaugeprob/interval.hpp"
#include "gaugeprob/tagged_division.hpp"

namespace gaugeprob {

struct PartitionLimits {
  int max_depth = 60;
  std::size_t max_pieces = std::size_t{1} << 24;
};

// Builds a gamma-sharp tagged division of `domain` by recursive bisection.
//
// A piece [u, v] is accepted as soon as one of the candidate tags u, (u+v)/2,
// v (tried in that order) satisfies [u, v] subset gamma(tag); otherwise it is
// split at its midpoint. Pieces are emitted left to right, so the result is a
// deterministic function of the gauge. Compactness guarantees termination for
// a genuine gauge; the depth and piece limits turn a pathological width
// function into PartitionLimitExceeded instead of a hang.
inline TaggedDivision cousin_partition(const Gauge& g, const Interval& domain,
                                       const PartitionLimits& limits = {}) {
  struct Node {
    double u, v;
    int depth;
  };

  std::vector<double> points{domain.lower()};
  std::vector<double> tags;
  std::vector<Node> stack{{domain.lower(), domain.upper(), 0}};

  while (!stack.empty()) {
    const Node n = stack.back();
    stack.pop_back();

    const double mid = n.u + (n.v - n.u) / 2.0;
    const double candidates[3] = {n.u, mid, n.v};
    bool accepted = false;
    for (double t : candidates) {
      if (g.covers(t, n.u, n.v)) {
        points.push_back(n.v);
        tags.push_back(t);
        accepted = true;
        break;
      }
    }
    if (accepted) {
      if (tags.size() > limits.max_pieces)
        throw PartitionLimitExceeded("sharp division exceeds " +
                                     std::to_string(limits.max_pieces) +
                                     " pieces");
      continue;
    }

    if (n.depth + 1 > limits.max_depth || !(n.u < mid && mid < n.v))
      throw PartitionLimitExceeded(
          "bisection depth limit " + std::to_string(limits.max_depth) +
          " exceeded near t=" + std::to_string(mid) +
          "; gauge evaluator is ill-behaved");
    // Right half first so the left half is processed next.
    stack.push_back({mid, n.v, n.depth + 1});
    stack.push_back({n.u, mid, n.depth + 1});
  }

  // The final point is the accepted piece's right end, which is domain.upper()
  // exactly because bisection never rounds the outer endpoints.
  return TaggedDivision(std::move(points), std::move(tags));
}

}  // namespace gaugeprob
