#include "fraglab/masspart.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "fraglab/stats.hpp"

namespace fraglab {

MassPartition MassPartition::normalize(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw std::invalid_argument("MassPartition: negative or non-finite value at index " +
                                  std::to_string(i));
    }
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  while (!values.empty() && values.back() == 0.0) values.pop_back();
  return MassPartition(std::move(values));
}

MassPartition MassPartition::from_sorted(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] < 0.0)
      throw std::invalid_argument("MassPartition: negative or non-finite value at index " +
                                  std::to_string(i));
    if (i > 0 && values[i] > values[i - 1])
      throw std::invalid_argument("MassPartition: not sorted decreasing at index " +
                                  std::to_string(i));
  }
  while (!values.empty() && values.back() == 0.0) values.pop_back();
  return MassPartition(std::move(values));
}

std::string_view to_string(SpaceTag tag) {
  switch (tag) {
    case SpaceTag::unit_sum: return "S1";
    case SpaceTag::subunit_sum: return "S_le1";
    case SpaceTag::finite_sum: return "S_fin";
  }
  return "?";
}

double product_metric(const MassPartition& a, const MassPartition& b) {
  const std::size_t k = std::max(a.support_size(), b.support_size());
  // Smallest terms first so the compensated ordering is also the accurate one.
  double sum = 0.0;
  for (std::size_t i = k; i >= 1; --i) {
    const double diff = std::min(std::abs(a.at(i - 1) - b.at(i - 1)), 1.0);
    sum += std::ldexp(diff, -static_cast<int>(i));
  }
  return sum;
}

double lp_distance(const MassPartition& a, const MassPartition& b, LpNorm p) {
  const std::size_t k = std::max(a.support_size(), b.support_size());
  switch (p) {
    case LpNorm::l1: {
      stats::KahanSum s;
      for (std::size_t i = 0; i < k; ++i) s.add(std::abs(a.at(i) - b.at(i)));
      return s.value();
    }
    case LpNorm::l2: {
      stats::KahanSum s;
      for (std::size_t i = 0; i < k; ++i) {
        const double d = a.at(i) - b.at(i);
        s.add(d * d);
      }
      return std::sqrt(s.value());
    }
    case LpNorm::linf: {
      double m = 0.0;
      for (std::size_t i = 0; i < k; ++i) m = std::max(m, std::abs(a.at(i) - b.at(i)));
      return m;
    }
  }
  return 0.0;
}

Moments moments(const MassPartition& a, double tol) {
  stats::KahanSum total;
  stats::KahanSum q;
  for (const double m : a.masses()) {
    total.add(m);
    q.add(m * m);
  }
  Moments result;
  result.total_mass = total.value();
  result.q_value = q.value();
  if (std::abs(result.total_mass - 1.0) <= tol) {
    result.tag = SpaceTag::unit_sum;
  } else if (result.total_mass <= 1.0 + tol) {
    result.tag = SpaceTag::subunit_sum;
  } else {
    result.tag = SpaceTag::finite_sum;
  }
  return result;
}

bool verify_refinement(const MassPartition& finer, const MassPartition& coarser,
                       const RefinementWitness& witness, double tol) {
  if (witness.assignment.size() < finer.support_size()) return false;
  std::int32_t max_target = -1;
  for (std::size_t j = 0; j < finer.support_size(); ++j) {
    if (witness.assignment[j] < 0) return false;
    max_target = std::max(max_target, witness.assignment[j]);
  }
  std::vector<stats::KahanSum> fiber(static_cast<std::size_t>(max_target) + 1);
  for (std::size_t j = 0; j < finer.support_size(); ++j) {
    fiber[static_cast<std::size_t>(witness.assignment[j])].add(finer.at(j));
  }
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    if (fiber[i].value() > coarser.at(i) + tol) return false;
  }
  return true;
}

namespace {

// Depth-first assignment of the (decreasing) finer masses into remaining bin
// capacities, largest mass first. Bins with equal remaining capacity are
// interchangeable, so only the first of an equal run is tried.
bool witness_dfs(std::span<const double> finer, std::size_t j, std::vector<double>& remaining,
                 std::vector<std::int32_t>& assignment, double tol) {
  if (j == finer.size()) return true;
  const double mass = finer[j];
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (i > 0 && remaining[i] == remaining[i - 1]) continue;
    if (mass > remaining[i] + tol) continue;
    remaining[i] -= mass;
    assignment[j] = static_cast<std::int32_t>(i);
    if (witness_dfs(finer, j + 1, remaining, assignment, tol)) return true;
    remaining[i] += mass;
  }
  return false;
}

}  // namespace

WitnessSearch find_refinement_witness(const MassPartition& finer, const MassPartition& coarser,
                                      int max_support, double tol) {
  WitnessSearch result;
  if (finer.support_size() > static_cast<std::size_t>(max_support)) {
    result.status = WitnessSearch::Status::too_large;
    return result;
  }
  if (finer.empty()) {
    result.status = WitnessSearch::Status::found;
    result.witness = RefinementWitness{};
    return result;
  }
  std::vector<double> remaining(coarser.masses().begin(), coarser.masses().end());
  if (remaining.empty()) {
    // Only the empty finer partition refines the zero partition.
    result.status = WitnessSearch::Status::none_exists;
    return result;
  }
  std::vector<std::int32_t> assignment(finer.support_size(), -1);
  if (witness_dfs(finer.masses(), 0, remaining, assignment, tol)) {
    result.status = WitnessSearch::Status::found;
    result.witness = RefinementWitness{std::move(assignment)};
  }
  return result;
}

MassPartition dust_sequence(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("dust_sequence: n >= 1 required");
  return MassPartition::normalize(
      std::vector<double>(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n)));
}

}  // namespace fraglab
