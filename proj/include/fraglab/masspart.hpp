#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace fraglab {

inline constexpr double kMassTolerance = 1e-12;

// A decreasing sequence of nonnegative masses with finite support; trailing
// zeros are dropped on construction and the conceptual zero-padding is
// handled inside the metric code. Immutable after construction.
class MassPartition {
 public:
  MassPartition() = default;

  /// Canonicalizes arbitrary nonnegative values: sorts decreasing, drops
  /// zeros. Throws std::invalid_argument naming the offending index on
  /// negative or non-finite input. Idempotent.
  static MassPartition normalize(std::vector<double> values);

  /// Input already sorted decreasing with no trailing zeros; validated.
  static MassPartition from_sorted(std::vector<double> values);

  std::span<const double> masses() const { return masses_; }
  std::size_t support_size() const { return masses_.size(); }
  bool empty() const { return masses_.empty(); }
  /// Mass at 0-based index i, zero-padded beyond the support.
  double at(std::size_t i) const { return i < masses_.size() ? masses_[i] : 0.0; }

  bool operator==(const MassPartition&) const = default;

 private:
  explicit MassPartition(std::vector<double> masses) : masses_(std::move(masses)) {}
  std::vector<double> masses_;
};

enum class SpaceTag { unit_sum, subunit_sum, finite_sum };
std::string_view to_string(SpaceTag tag);

struct Moments {
  double total_mass = 0.0;
  double q_value = 0.0;  // sum of squared masses
  SpaceTag tag = SpaceTag::unit_sum;
};

/// The witness function gamma of the refinement partial order: assignment[j]
/// is the 0-based index of the coarser piece that finer piece j fragments.
struct RefinementWitness {
  std::vector<std::int32_t> assignment;
};

/// Product metric sum_{i>=1} 2^{-i} min(|a_i - b_i|, 1); value in [0,1].
double product_metric(const MassPartition& a, const MassPartition& b);

enum class LpNorm { l1, l2, linf };

double lp_distance(const MassPartition& a, const MassPartition& b, LpNorm p);

Moments moments(const MassPartition& a, double tol = kMassTolerance);

/// True iff every fiber sum of w lands at or below the target mass
/// (|support(x)|-padded with zeros, so mass may disappear). w must cover the
/// support of y.
bool verify_refinement(const MassPartition& finer, const MassPartition& coarser,
                       const RefinementWitness& witness, double tol = kMassTolerance);

struct WitnessSearch {
  enum class Status { found, none_exists, too_large };
  Status status = Status::none_exists;
  std::optional<RefinementWitness> witness;
};

/// Exhaustive (pruned) search for a refinement witness. Declines instances
/// with |support(finer)| > max_support instead of approximating: the general
/// decision problem is bin-packing feasibility.
WitnessSearch find_refinement_witness(const MassPartition& finer, const MassPartition& coarser,
                                      int max_support = 12, double tol = kMassTolerance);

/// (1/n, ..., 1/n), n entries; the canonical sequence that converges to zero
/// in the product metric while staying at l1 distance 1.
MassPartition dust_sequence(std::int64_t n);

}  // namespace fraglab
