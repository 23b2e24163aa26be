#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fraglab/rng.hpp"

namespace fraglab {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

// Finite tree with optional root and optional vertex probability weights.
// Adjacency is CSR so that n ~ 1e6 stays cheap; immutable after validation.
class Tree {
 public:
  /// Validates connectivity and edge count (n-1); weights, when given, must
  /// be nonnegative and sum to 1 within tolerance.
  static Tree from_edges(Vertex n, std::span<const Edge> edges, std::optional<Vertex> root = {},
                         std::vector<double> weights = {});

  /// parent[v] = parent of v, parent[root] = -1.
  static Tree from_parents(std::span<const Vertex> parents, Vertex root,
                           std::vector<double> weights = {});

  Vertex vertex_count() const { return n_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(n_) - 1; }
  std::optional<Vertex> root() const { return root_; }
  bool has_weights() const { return !weights_.empty(); }
  std::span<const double> weights() const { return weights_; }
  double weight(Vertex v) const { return weights_.empty() ? 1.0 / n_ : weights_[v]; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  /// Edges in construction order; edge ids index into this.
  std::span<const Edge> edges() const { return edges_; }

 private:
  Tree() = default;
  void build_adjacency();
  void validate_connected() const;

  Vertex n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::optional<Vertex> root_;
  std::vector<double> weights_;
  std::vector<double> cumulative_weights_;  // for weighted vertex sampling

  friend Vertex sample_vertex(const Tree&, Rng&);
};

/// BFS distances from src into out (resized to n).
void bfs_distances(const Tree& tree, Vertex src, std::vector<std::int32_t>& out);

/// Number of edges on the unique v-w path.
std::int32_t distance(const Tree& tree, Vertex v, Vertex w);

struct TreeSummary {
  std::int64_t diameter = 0;
  std::optional<std::int64_t> height;             // rooted only
  std::optional<std::int64_t> total_path_length;  // rooted only
  double mean_pairwise_distance = 0.0;  // ordered pairs incl. diagonal; weighted if weights set
};

/// Diameter by double BFS; TPL and height when rooted; mean pairwise distance
/// exactly via the edge-split identity sum_e 2 a_e b_e (weighted:
/// sum_e 2 w(A_e) w(B_e)).
TreeSummary summary(const Tree& tree);

/// sum_{v,w} p_v p_w e^{-beta d(v,w)} over ordered pairs including v = w;
/// uniform p when the tree is unweighted. One BFS per source, exact.
double laplace_distance_sum(const Tree& tree, double beta);

/// Uniform vertex, or distributed per the weight vector when present.
Vertex sample_vertex(const Tree& tree, Rng& rng);

}  // namespace fraglab
