#include "fraglab/cadlag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fraglab {

double evaluate(const PiecewiseLinearPath& path, double t) {
  if (path.times.size() < 2) throw std::invalid_argument("PiecewiseLinearPath: needs >= 2 knots");
  if (t < path.times.front() || t > path.times.back())
    throw std::out_of_range("PiecewiseLinearPath evaluate: t outside [0,horizon]");
  const auto it = std::upper_bound(path.times.begin(), path.times.end(), t);
  if (it == path.times.end()) return path.values.back();
  const std::size_t hi = static_cast<std::size_t>(it - path.times.begin());
  if (hi == 0) return path.values.front();
  const std::size_t lo = hi - 1;
  const double w = (t - path.times[lo]) / (path.times[hi] - path.times[lo]);
  return path.values[lo] + w * (path.values[hi] - path.values[lo]);
}

namespace {

void check_grid(int grid, std::size_t a, std::size_t b) {
  if (grid <= 0 || static_cast<std::size_t>(grid) < std::max(a, b))
    throw std::invalid_argument("uniform_distance: grid below breakpoint/knot count");
}

std::vector<double> merged_times(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  return merged;
}

template <class Payload, class Metric>
double step_sup(const StepPath<Payload>& f, const StepPath<Payload>& g, Metric metric) {
  if (f.horizon != g.horizon) throw std::invalid_argument("uniform_distance: mismatched horizons");
  double sup = 0.0;
  for (const double t : merged_times(f.breakpoints, g.breakpoints))
    sup = std::max(sup, metric(evaluate(f, t), evaluate(g, t)));
  return sup;
}

}  // namespace

double uniform_distance(const StepPath<double>& f, const StepPath<double>& g, int grid) {
  check_grid(grid, f.breakpoints.size(), g.breakpoints.size());
  return step_sup(f, g, [](double a, double b) { return std::abs(a - b); });
}

double uniform_distance(const StepPath<MassPartition>& f, const StepPath<MassPartition>& g,
                        int grid) {
  check_grid(grid, f.breakpoints.size(), g.breakpoints.size());
  return step_sup(f, g,
                  [](const MassPartition& a, const MassPartition& b) { return product_metric(a, b); });
}

double uniform_distance(const PiecewiseLinearPath& f, const PiecewiseLinearPath& g, int grid) {
  check_grid(grid, f.times.size(), g.times.size());
  if (f.horizon() != g.horizon() || f.times.front() != g.times.front())
    throw std::invalid_argument("uniform_distance: mismatched horizons");
  double sup = 0.0;
  for (const double t : merged_times(f.times, g.times))
    sup = std::max(sup, std::abs(evaluate(f, t) - evaluate(g, t)));
  return sup;
}

namespace {

struct Jump {
  double time = 0.0;
  double height = 0.0;  // post - pre
};

std::vector<Jump> jumps_of(const StepPath<double>& path) {
  std::vector<Jump> jumps;
  for (std::size_t k = 1; k < path.breakpoints.size(); ++k)
    jumps.push_back({path.breakpoints[k], path.values[k] - path.values[k - 1]});
  return jumps;
}

double max_abs_jump(const std::vector<Jump>& jumps) {
  double m = 0.0;
  for (const auto& j : jumps) m = std::max(m, std::abs(j.height));
  return m;
}

// Exact D(lambda) = max(sup |lambda - id|, sup |f - g o lambda|) for the
// piecewise-linear time change fixing (0,0) and (H,H) and mapping matched
// f-jump times to g-jump times.
double certify_time_change(const StepPath<double>& f, const StepPath<double>& g,
                           const std::vector<std::pair<double, double>>& anchors) {
  std::vector<double> ax{0.0}, ay{0.0};
  for (const auto& [u, v] : anchors) {
    ax.push_back(u);
    ay.push_back(v);
  }
  ax.push_back(f.horizon);
  ay.push_back(g.horizon);
  const PiecewiseLinearPath lambda{ax, ay};
  const PiecewiseLinearPath lambda_inv{ay, ax};

  double displacement = 0.0;
  for (std::size_t i = 0; i < ax.size(); ++i)
    displacement = std::max(displacement, std::abs(ax[i] - ay[i]));

  // g o lambda jumps at the pulled-back g breakpoints; merge with f's.
  std::vector<double> pulled;
  pulled.reserve(g.breakpoints.size());
  for (const double w : g.breakpoints)
    pulled.push_back(std::clamp(evaluate(lambda_inv, w), 0.0, f.horizon));
  std::sort(pulled.begin(), pulled.end());
  double value_sup = 0.0;
  for (const double t : merged_times(f.breakpoints, pulled)) {
    const double fv = evaluate(f, t);
    const double y = std::clamp(evaluate(lambda, t), 0.0, g.horizon);
    double worst = std::abs(fv - evaluate(g, y));
    // Conservative handling of float slop exactly at a pulled-back jump:
    // count both sides of any g breakpoint within rounding distance of y.
    for (std::size_t k = 1; k < g.breakpoints.size(); ++k) {
      const double w = g.breakpoints[k];
      if (std::abs(w - y) <= 1e-9 * std::max(1.0, g.horizon)) {
        worst = std::max(worst, std::abs(fv - g.values[k]));
        worst = std::max(worst, std::abs(fv - g.values[k - 1]));
      }
    }
    value_sup = std::max(value_sup, worst);
  }
  return std::max(displacement, value_sup);
}

}  // namespace

J1Bound j1_upper_bound(const StepPath<double>& f, const StepPath<double>& g) {
  f.validate();
  g.validate();
  if (f.horizon != g.horizon) throw std::invalid_argument("j1_upper_bound: mismatched horizons");
  const auto jf = jumps_of(f);
  const auto jg = jumps_of(g);

  J1Bound bound;
  bound.lower = 0.5 * std::abs(max_abs_jump(jf) - max_abs_jump(jg));
  bound.upper = uniform_distance(f, g, static_cast<int>(std::max(f.breakpoints.size(),
                                                                 g.breakpoints.size())));

  // Order-preserving jump matching minimizing
  //   sum_matched max(|dt|, |dheight|) + sum_unmatched |height|.
  const std::size_t p = jf.size(), q = jg.size();
  std::vector<std::vector<double>> cost(p + 1, std::vector<double>(q + 1, 0.0));
  std::vector<std::vector<int>> choice(p + 1, std::vector<int>(q + 1, 0));
  for (std::size_t i = p; i-- > 0;) cost[i][q] = cost[i + 1][q] + std::abs(jf[i].height);
  for (std::size_t j = q; j-- > 0;) cost[p][j] = cost[p][j + 1] + std::abs(jg[j].height);
  for (std::size_t i = p; i-- > 0;) {
    for (std::size_t j = q; j-- > 0;) {
      const double match = std::max(std::abs(jf[i].time - jg[j].time),
                                    std::abs(jf[i].height - jg[j].height)) +
                           cost[i + 1][j + 1];
      const double skip_f = std::abs(jf[i].height) + cost[i + 1][j];
      const double skip_g = std::abs(jg[j].height) + cost[i][j + 1];
      cost[i][j] = match;
      choice[i][j] = 0;
      if (skip_f < cost[i][j]) {
        cost[i][j] = skip_f;
        choice[i][j] = 1;
      }
      if (skip_g < cost[i][j]) {
        cost[i][j] = skip_g;
        choice[i][j] = 2;
      }
    }
  }
  std::vector<std::pair<double, double>> anchors;
  {
    std::size_t i = 0, j = 0;
    while (i < p && j < q) {
      if (choice[i][j] == 0) {
        anchors.emplace_back(jf[i].time, jg[j].time);
        ++i;
        ++j;
      } else if (choice[i][j] == 1) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  if (!anchors.empty())
    bound.upper = std::min(bound.upper, certify_time_change(f, g, anchors));
  bound.lower = std::min(bound.lower, bound.upper);
  return bound;
}

CounterexamplePair counterexample_pair(int n) {
  if (n < 2) throw std::invalid_argument("counterexample_pair: n >= 2 required");
  const double ramp_start = 0.5 - 1.0 / static_cast<double>(n);
  PiecewiseLinearPath g;
  g.times = {0.0};
  g.values = {0.0};
  if (ramp_start > 0.0) {
    g.times.push_back(ramp_start);
    g.values.push_back(0.0);
  }
  g.times.push_back(0.5);
  g.values.push_back(1.0);
  g.times.push_back(1.0);
  g.values.push_back(1.0);

  CounterexamplePair pair;
  pair.f[0] = g;
  pair.f[1].times = g.times;
  for (const double v : g.values) pair.f[1].values.push_back(1.0 - v);
  pair.g = std::move(g);
  return pair;
}

bool monotone_hypothesis_holds(const CounterexamplePair& pair) {
  const auto& up = pair.f[0];
  const auto& down = pair.f[1];
  if (up.times != down.times) return false;
  for (std::size_t i = 0; i < up.times.size(); ++i) {
    if (up.values[i] + down.values[i] != 1.0) return false;
    if (i > 0 && up.values[i] < up.values[i - 1]) return false;
    if (i > 0 && down.values[i] > down.values[i - 1]) return false;
  }
  return up.times.front() == 0.0 && up.times.back() == 1.0;
}

}  // namespace fraglab
