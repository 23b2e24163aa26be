#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fraglab/masspart.hpp"

namespace fraglab {

// Right-continuous step path: value payload[k] holds on [breakpoints[k],
// breakpoints[k+1]), the last one up to and including the horizon.
template <class Payload>
struct StepPath {
  std::vector<double> breakpoints;  // strictly increasing, starts at 0
  std::vector<Payload> values;      // one per breakpoint
  double horizon = 0.0;

  void validate() const {
    if (breakpoints.empty() || breakpoints.size() != values.size())
      throw std::invalid_argument("StepPath: breakpoints/values mismatch");
    if (breakpoints.front() != 0.0) throw std::invalid_argument("StepPath: must start at 0");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
      if (!(breakpoints[i] > breakpoints[i - 1]))
        throw std::invalid_argument("StepPath: breakpoints not strictly increasing");
    if (horizon < breakpoints.back()) throw std::invalid_argument("StepPath: horizon too small");
  }
};

/// Continuous piecewise-linear path through (times[i], values[i]).
struct PiecewiseLinearPath {
  std::vector<double> times;  // strictly increasing
  std::vector<double> values;

  double horizon() const { return times.back(); }
};

template <class Payload>
const Payload& evaluate(const StepPath<Payload>& path, double t) {
  if (t < 0.0 || t > path.horizon) throw std::out_of_range("StepPath evaluate: t outside [0,horizon]");
  // Right-continuous: the value at a breakpoint is the post-jump one.
  std::size_t lo = 0, hi = path.breakpoints.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (path.breakpoints[mid] <= t ? lo : hi) = mid;
  }
  return path.values[lo];
}

double evaluate(const PiecewiseLinearPath& path, double t);

/// Exact sup-distance of two real step paths over the merged breakpoint set.
/// grid must be at least the breakpoint count of both paths (resolution
/// contract shared with the mass-partition overload).
double uniform_distance(const StepPath<double>& f, const StepPath<double>& g, int grid);

/// Mass-partition payloads are compared in the product metric.
double uniform_distance(const StepPath<MassPartition>& f, const StepPath<MassPartition>& g,
                        int grid);

/// Piecewise-linear pairs: the sup on each merged-knot interval is attained
/// at an endpoint, so the merged-knot scan is exact.
double uniform_distance(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g, int grid);

struct J1Bound {
  double upper = 0.0;  // certified: an explicit time change attains it
  double lower = 0.0;  // rigorous lower certificate from unmatched jump heights
};

/// Certified upper bound on the Skorohod J1 distance of two real step paths:
/// minimum over the identity time change and a dynamic-programming alignment
/// of jumps, each candidate certified by exact evaluation of its induced
/// piecewise-linear time change.
J1Bound j1_upper_bound(const StepPath<double>& f, const StepPath<double>& g);

/// The ramp paths that refute the cited compactness lemma: g_n is 0 on
/// [0, 1/2 - 1/n], rises linearly to 1 at 1/2, then stays 1; the pair path is
/// (g_n, 1 - g_n).
struct CounterexamplePair {
  PiecewiseLinearPath g;
  std::array<PiecewiseLinearPath, 2> f;
};

CounterexamplePair counterexample_pair(int n);

/// Structural hypothesis of the refuted lemma for the pair path: exactly two
/// coordinates, the first nondecreasing, the second nonincreasing, summing to
/// 1 at every knot (so the decomposition size M = 2 works for every epsilon).
bool monotone_hypothesis_holds(const CounterexamplePair& pair);

}  // namespace fraglab
