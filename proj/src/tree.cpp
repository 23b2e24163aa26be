#include "fraglab/tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fraglab/masspart.hpp"
#include "fraglab/stats.hpp"

namespace fraglab {

namespace {

void validate_weights(Vertex n, const std::vector<double>& weights) {
  if (weights.empty()) return;
  if (static_cast<Vertex>(weights.size()) != n)
    throw std::invalid_argument("Tree: weight count != vertex count");
  stats::KahanSum total;
  for (const double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("Tree: negative weight");
    total.add(w);
  }
  if (std::abs(total.value() - 1.0) > kMassTolerance)
    throw std::invalid_argument("Tree: weights must sum to 1");
}

}  // namespace

Tree Tree::from_edges(Vertex n, std::span<const Edge> edges, std::optional<Vertex> root,
                      std::vector<double> weights) {
  if (n < 1) throw std::invalid_argument("Tree: n >= 1 required");
  if (static_cast<std::int64_t>(edges.size()) != static_cast<std::int64_t>(n) - 1)
    throw std::invalid_argument("Tree: expected n-1 edges, got " + std::to_string(edges.size()));
  if (root && (*root < 0 || *root >= n)) throw std::invalid_argument("Tree: root out of range");
  validate_weights(n, weights);

  Tree tree;
  tree.n_ = n;
  tree.edges_.assign(edges.begin(), edges.end());
  for (const auto& [u, v] : tree.edges_)
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
      throw std::invalid_argument("Tree: bad edge endpoint");
  tree.root_ = root;
  tree.weights_ = std::move(weights);
  tree.build_adjacency();
  tree.validate_connected();
  if (!tree.weights_.empty()) {
    tree.cumulative_weights_.resize(tree.weights_.size());
    stats::KahanSum acc;
    for (std::size_t i = 0; i < tree.weights_.size(); ++i) {
      acc.add(tree.weights_[i]);
      tree.cumulative_weights_[i] = acc.value();
    }
    tree.cumulative_weights_.back() = 1.0;
  }
  return tree;
}

Tree Tree::from_parents(std::span<const Vertex> parents, Vertex root,
                        std::vector<double> weights) {
  const Vertex n = static_cast<Vertex>(parents.size());
  std::vector<Edge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (Vertex v = 0; v < n; ++v) {
    if (v == root) {
      if (parents[v] != -1) throw std::invalid_argument("Tree: root must have parent -1");
      continue;
    }
    edges.emplace_back(parents[v], v);
  }
  return from_edges(n, edges, root, std::move(weights));
}

void Tree::build_adjacency() {
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& [u, v] : edges_) {
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (Vertex v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
  adjacency_.resize(2 * edges_.size());
  std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges_) {
    adjacency_[cursor[u]++] = v;
    adjacency_[cursor[v]++] = u;
  }
}

void Tree::validate_connected() const {
  std::vector<std::int32_t> dist;
  bfs_distances(*this, 0, dist);
  for (Vertex v = 0; v < n_; ++v)
    if (dist[v] < 0) throw std::invalid_argument("Tree: not connected");
}

void bfs_distances(const Tree& tree, Vertex src, std::vector<std::int32_t>& out) {
  const Vertex n = tree.vertex_count();
  if (src < 0 || src >= n) throw std::invalid_argument("bfs_distances: bad source");
  out.assign(n, -1);
  std::vector<Vertex> queue;
  queue.reserve(n);
  queue.push_back(src);
  out[src] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    for (const Vertex w : tree.neighbors(v)) {
      if (out[w] < 0) {
        out[w] = out[v] + 1;
        queue.push_back(w);
      }
    }
  }
}

std::int32_t distance(const Tree& tree, Vertex v, Vertex w) {
  const Vertex n = tree.vertex_count();
  if (v < 0 || v >= n || w < 0 || w >= n) throw std::invalid_argument("distance: bad vertex id");
  if (v == w) return 0;
  std::vector<std::int32_t> dist;
  bfs_distances(tree, v, dist);
  return dist[w];
}

namespace {

Vertex farthest_from(const Tree& tree, Vertex src, std::vector<std::int32_t>& dist) {
  bfs_distances(tree, src, dist);
  Vertex best = src;
  for (Vertex v = 0; v < tree.vertex_count(); ++v)
    if (dist[v] > dist[best]) best = v;
  return best;
}

/// Iterative post-order accumulation of subtree sizes/weights from a root.
struct SubtreeScan {
  std::vector<Vertex> order;    // BFS order from the scan root
  std::vector<Vertex> parent;   // parent in the scan orientation
  std::vector<std::int64_t> size;
  std::vector<double> weight;
};

SubtreeScan scan_subtrees(const Tree& tree, Vertex root) {
  const Vertex n = tree.vertex_count();
  SubtreeScan s;
  s.parent.assign(n, -1);
  s.size.assign(n, 1);
  s.weight.assign(n, 0.0);
  for (Vertex v = 0; v < n; ++v) s.weight[v] = tree.weight(v);
  s.order.reserve(n);
  s.order.push_back(root);
  std::vector<bool> seen(n, false);
  seen[root] = true;
  for (std::size_t head = 0; head < s.order.size(); ++head) {
    const Vertex v = s.order[head];
    for (const Vertex w : tree.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        s.parent[w] = v;
        s.order.push_back(w);
      }
    }
  }
  for (std::size_t i = s.order.size(); i-- > 1;) {
    const Vertex v = s.order[i];
    s.size[s.parent[v]] += s.size[v];
    s.weight[s.parent[v]] += s.weight[v];
  }
  return s;
}

}  // namespace

TreeSummary summary(const Tree& tree) {
  TreeSummary result;
  const Vertex n = tree.vertex_count();
  std::vector<std::int32_t> dist;
  if (n == 1) {
    if (tree.root()) {
      result.height = 0;
      result.total_path_length = 0;
    }
    return result;
  }

  const Vertex a = farthest_from(tree, 0, dist);
  const Vertex b = farthest_from(tree, a, dist);
  result.diameter = dist[b];

  if (tree.root()) {
    bfs_distances(tree, *tree.root(), dist);
    std::int64_t tpl = 0;
    std::int32_t height = 0;
    for (Vertex v = 0; v < n; ++v) {
      tpl += dist[v];
      height = std::max(height, dist[v]);
    }
    result.height = height;
    result.total_path_length = tpl;
  }

  // Edge-split identity: each edge separates the tree into sizes (a_e, b_e)
  // and contributes 2 a_e b_e ordered pairs at +1 distance each.
  const Vertex scan_root = tree.root().value_or(0);
  const SubtreeScan s = scan_subtrees(tree, scan_root);
  if (tree.has_weights()) {
    stats::KahanSum sum;
    for (Vertex v = 0; v < n; ++v) {
      if (v == scan_root) continue;
      sum.add(2.0 * s.weight[v] * (1.0 - s.weight[v]));
    }
    result.mean_pairwise_distance = sum.value();
  } else {
    std::int64_t sum = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (v == scan_root) continue;
      sum += 2 * s.size[v] * (static_cast<std::int64_t>(n) - s.size[v]);
    }
    result.mean_pairwise_distance =
        static_cast<double>(sum) / (static_cast<double>(n) * static_cast<double>(n));
  }
  return result;
}

double laplace_distance_sum(const Tree& tree, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("laplace_distance_sum: beta >= 0 required");
  const Vertex n = tree.vertex_count();
  std::vector<double> decay(n, 1.0);
  const double step = std::exp(-beta);
  for (Vertex d = 1; d < n; ++d) decay[d] = decay[d - 1] * step;

  std::vector<std::int32_t> dist;
  stats::KahanSum total;
  if (tree.has_weights()) {
    for (Vertex v = 0; v < n; ++v) {
      bfs_distances(tree, v, dist);
      stats::KahanSum row;
      for (Vertex w = 0; w < n; ++w) row.add(tree.weight(w) * decay[dist[w]]);
      total.add(tree.weight(v) * row.value());
    }
    return total.value();
  }
  // Unweighted: count vertices per distance, one BFS per source.
  std::vector<std::int64_t> count_at(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    bfs_distances(tree, v, dist);
    std::int32_t max_d = 0;
    for (Vertex w = 0; w < n; ++w) {
      ++count_at[dist[w]];
      max_d = std::max(max_d, dist[w]);
    }
    stats::KahanSum row;
    for (std::int32_t d = 0; d <= max_d; ++d) {
      row.add(static_cast<double>(count_at[d]) * decay[d]);
      count_at[d] = 0;
    }
    total.add(row.value());
  }
  return total.value() / (static_cast<double>(n) * static_cast<double>(n));
}

Vertex sample_vertex(const Tree& tree, Rng& rng) {
  const Vertex n = tree.vertex_count();
  if (!tree.has_weights()) return static_cast<Vertex>(rng.below(static_cast<std::uint64_t>(n)));
  const double u = rng.uniform01();
  const auto& cum = tree.cumulative_weights_;
  const auto it = std::lower_bound(cum.begin(), cum.end(), u);
  return static_cast<Vertex>(std::min<std::size_t>(it - cum.begin(), cum.size() - 1));
}

}  // namespace fraglab
