#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fraglab/rng.hpp"
#include "fraglab/tree.hpp"

namespace fraglab {

/// Vose alias table for O(1) draws from a fixed discrete distribution.
class AliasTable {
 public:
  static AliasTable build(std::span<const double> weights);
  std::uint32_t sample(Rng& rng) const {
    const auto i = static_cast<std::uint32_t>(rng.below(prob_.size()));
    return rng.uniform01() < prob_[i] ? i : alias_[i];
  }

 private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

// Offspring distribution on {0,1,2,...}: an explicit table plus, for the
// polynomial-tail family, an analytic tail beyond the table.
class OffspringDistribution {
 public:
  static OffspringDistribution from_table(std::vector<double> pmf);
  static OffspringDistribution poisson(double lambda);
  /// mu(k) = 2^{-k-1}; critical geometric.
  static OffspringDistribution geometric_half();
  /// mu(k) = k^{-1-alpha} / zeta(alpha) for k >= 1, mu(0) = 1 - zeta(1+alpha)/zeta(alpha);
  /// mean exactly 1, tail in the alpha-stable domain of attraction.
  static OffspringDistribution zeta_stable(double alpha);

  double pmf(std::int64_t k) const;
  double mean() const { return mean_; }
  bool is_critical(double tol = 1e-9) const { return std::abs(mean_ - 1.0) <= tol; }
  /// mu(0) > 0 and mu(0) + mu(1) < 1, required by the conditioned sampler.
  bool usable_for_conditioning() const;
  double variance() const;

  std::int64_t sample(Rng& rng) const;

 private:
  std::vector<double> table_;  // pmf on 0..K
  AliasTable alias_;           // over 0..K plus one tail bucket when tail_mass_ > 0
  double mean_ = 0.0;
  double tail_mass_ = 0.0;
  double tail_coeff_ = 0.0;     // c in c * k^{-s}
  double tail_exponent_ = 0.0;  // s = 1 + alpha

  std::int64_t sample_analytic_tail(Rng& rng) const;
  void finalize();
};

/// Counts N(i) of vertices with out-degree i; must satisfy the plane-tree
/// feasibility identity sum_i N(i) = 1 + sum_i i N(i).
class DegreeSequence {
 public:
  explicit DegreeSequence(std::vector<std::int64_t> counts);

  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t vertex_count() const { return vertices_; }
  std::int64_t edge_count() const { return vertices_ - 1; }
  /// sigma_n^2 = sum_i i(i-1) N(i).
  double sigma_sq() const { return sigma_sq_; }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t vertices_ = 0;
  double sigma_sq_ = 0.0;
};

/// Decreasing probability vector on {0,...,K-1}; sigma_p = sqrt(sum p_i^2).
class RankedProbability {
 public:
  explicit RankedProbability(std::vector<double> p);
  static RankedProbability uniform(std::int64_t n);
  static RankedProbability truncated_geometric(std::int64_t n, double ratio = 0.5);
  /// p_0 = p1, the remaining mass spread evenly over n-1 entries.
  static RankedProbability heavy_atom(double p1, std::int64_t n);

  std::span<const double> values() const { return p_; }
  std::int64_t support() const { return static_cast<std::int64_t>(p_.size()); }
  double sigma() const { return sigma_; }
  std::int64_t sample(Rng& rng) const { return alias_.sample(rng); }

 private:
  std::vector<double> p_;
  double sigma_ = 0.0;
  AliasTable alias_;
};

/// Uniform labelled tree on n vertices via Prufer decoding, rooted uniformly.
Tree cayley(Vertex n, Rng& rng);

/// Critical Galton-Watson tree conditioned on n vertices: rejection on the
/// degree sum, uniform permutation, cycle-lemma rotation, preorder decode.
/// Throws after max_attempts rejected sums (lattice-infeasible n surfaces
/// this way).
Tree gw_conditioned(const OffspringDistribution& mu, Vertex n, Rng& rng,
                    std::int64_t max_attempts = 1'000'000);

/// Uniform rooted plane tree with the given degree sequence.
Tree degree_sequence_tree(const DegreeSequence& s, Rng& rng);

/// Birthday-construction tree on the support of p, rooted at the first draw,
/// with p attached as the vertex weights.
Tree p_tree(const RankedProbability& p, Rng& rng);

struct StableFamily {
  OffspringDistribution mu;
  double alpha = 2.0;
  /// Normalizing sequence B_n (kappa_alpha = 1 by convention; downstream uses
  /// are scale-ratio checks where the constant cancels).
  std::function<double(double)> b_n;
};

/// alpha in (1,2]; alpha = 2 yields Poisson(1) with B_n = sigma sqrt(n),
/// otherwise the zeta-tail family with B_n = n^{1/alpha}.
StableFamily stable_family(double alpha);

/// Exactly one cyclic rotation of a degree word with sum = len-1 encodes a
/// plane tree; returns that offset (first prefix-sum argmin).
std::size_t cycle_lemma_offset(std::span<const std::int64_t> word);

/// Preorder decode of a valid degree word into a parent array (root 0).
/// Throws std::logic_error if the word is not a valid encoding.
std::vector<Vertex> decode_degree_word(std::span<const std::int64_t> word);

}  // namespace fraglab
