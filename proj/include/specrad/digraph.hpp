// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specrad/sparse_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specrad {

/// Digraph G_A of a tensor: vertices 0..n-1, arc (i,j) whenever some stored
/// entry with first index i contains j among its trailing indices.
/// Loops are permitted. Immutable after construction.
class TensorDigraph {
 public:
  TensorDigraph(Index n, std::vector<std::pair<Index, Index>> arcs) : n_(n), out_(n) {
    if (n < 1) throw std::invalid_argument("digraph needs at least one vertex");
    for (const auto& [i, j] : arcs) {
      if (i < 0 || i >= n || j < 0 || j >= n)
        throw std::invalid_argument("arc endpoint out of range");
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    arc_count_ = static_cast<Index>(arcs.size());
    for (const auto& [i, j] : arcs) {
      out_[static_cast<std::size_t>(i)].push_back(j);
      if (i == j) has_loop_ = true;
    }
  }

  Index n_vertices() const { return n_; }
  Index arc_count() const { return arc_count_; }
  bool has_loop() const { return has_loop_; }

  /// Out-neighborhood G_A^+(v), sorted ascending.
  const std::vector<Index>& out_neighbors(Index v) const {
    return out_[static_cast<std::size_t>(v)];
  }

  bool has_arc(Index i, Index j) const {
    const auto& nb = out_[static_cast<std::size_t>(i)];
    return std::binary_search(nb.begin(), nb.end(), j);
  }

  std::vector<std::pair<Index, Index>> arcs() const {
    std::vector<std::pair<Index, Index>> a;
    a.reserve(static_cast<std::size_t>(arc_count_));
    for (Index i = 0; i < n_; ++i)
      for (Index j : out_[static_cast<std::size_t>(i)]) a.emplace_back(i, j);
    return a;
  }

 private:
  Index n_ = 0;
  Index arc_count_ = 0;
  bool has_loop_ = false;
  std::vector<std::vector<Index>> out_;
};

/// Ordered vertex cycle; the arc from back() to front() closes it.
/// A length-1 circuit is a loop.
struct Circuit {
  std::vector<Index> vertices;

  Index length() const { return static_cast<Index>(vertices.size()); }

  /// Rotation with the smallest vertex leading; cyclically equivalent circuits
  /// share one canonical form.
  Circuit canonical() const {
    if (vertices.empty()) return *this;
    const auto lead = std::min_element(vertices.begin(), vertices.end());
    Circuit c;
    c.vertices.reserve(vertices.size());
    c.vertices.insert(c.vertices.end(), lead, vertices.end());
    c.vertices.insert(c.vertices.end(), vertices.begin(), lead);
    return c;
  }

  bool operator==(const Circuit& o) const { return vertices == o.vertices; }
};

/// Geometric mean of vertex weights along a circuit, evaluated in log space.
template <typename Derived>
typename Derived::Scalar circuit_geometric_mean(const Circuit& c,
                                                const Eigen::MatrixBase<Derived>& w) {
  using Scalar = typename Derived::Scalar;
  if (c.vertices.empty()) throw std::invalid_argument("empty circuit has no geometric mean");
  Scalar acc = 0;
  for (Index v : c.vertices) acc += std::log(w.derived()[v]);
  return std::exp(acc / static_cast<Scalar>(c.vertices.size()));
}

/// True when every consecutive pair (including the closing one) is an arc.
inline bool is_circuit_of(const Circuit& c, const TensorDigraph& g) {
  const Index len = c.length();
  if (len < 1) return false;
  for (Index k = 0; k < len; ++k) {
    const Index u = c.vertices[static_cast<std::size_t>(k)];
    const Index v = c.vertices[static_cast<std::size_t>((k + 1) % len)];
    if (u < 0 || u >= g.n_vertices() || !g.has_arc(u, v)) return false;
  }
  return true;
}

template <typename Scalar>
TensorDigraph build_digraph(const SparseTensor<Scalar>& t) {
  std::vector<std::pair<Index, Index>> arcs;
  arcs.reserve(static_cast<std::size_t>(t.nnz() * (t.order() - 1)));
  for (Index e = 0; e < t.nnz(); ++e) {
    const auto tup = t.tuple(e);
    for (Index j = 1; j < t.order(); ++j) arcs.emplace_back(tup[0], tup[j]);
  }
  return TensorDigraph(t.dim(), std::move(arcs));
}

namespace detail {

inline std::vector<bool> reachable_from(const std::vector<std::vector<Index>>& adj, Index start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<Index> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index v : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = true;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Strong connectivity of G_A; a single vertex is trivially strongly connected.
inline bool is_weakly_irreducible(const TensorDigraph& g) {
  const Index n = g.n_vertices();
  if (n == 1) return true;

  std::vector<std::vector<Index>> fwd(static_cast<std::size_t>(n)), rev(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j : g.out_neighbors(i)) {
      fwd[static_cast<std::size_t>(i)].push_back(j);
      rev[static_cast<std::size_t>(j)].push_back(i);
    }
  }
  const auto seen_fwd = detail::reachable_from(fwd, 0);
  if (std::find(seen_fwd.begin(), seen_fwd.end(), false) != seen_fwd.end()) return false;
  const auto seen_rev = detail::reachable_from(rev, 0);
  return std::find(seen_rev.begin(), seen_rev.end(), false) == seen_rev.end();
}

/// Length of the shortest circuit; 1 iff a loop exists.
/// Throws when the digraph has no circuit.
inline Index girth(const TensorDigraph& g) {
  if (g.has_loop()) return 1;
  const Index n = g.n_vertices();
  Index best = std::numeric_limits<Index>::max();
  std::vector<Index> dist(static_cast<std::size_t>(n));
  std::vector<Index> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (Index s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), Index(-1));
    dist[static_cast<std::size_t>(s)] = 0;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Index u = queue[head];
      const Index du = dist[static_cast<std::size_t>(u)];
      if (du + 1 >= best) continue;
      for (Index v : g.out_neighbors(u)) {
        if (v == s) {
          best = std::min(best, du + 1);
        } else if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = du + 1;
          queue.push_back(v);
        }
      }
    }
  }
  if (best == std::numeric_limits<Index>::max())
    throw std::invalid_argument("digraph has no circuit");
  return best;
}

enum class ExtremalSense { Min, Max };

/// Greedy labelled walk: from `start`, repeatedly step to the out-neighbor with
/// extremal label (smallest vertex index on ties) until a vertex repeats, then
/// return the cycle portion. Every step satisfies the argmax/argmin condition.
template <typename Derived>
Circuit extremal_circuit(const TensorDigraph& g, const Eigen::MatrixBase<Derived>& labels_in,
                         ExtremalSense sense, Index start = 0) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Ref<const VectorX<Scalar>> labels(labels_in.derived());
  const Index n = g.n_vertices();
  if (labels.size() != n)
    throw std::invalid_argument("vertex labelling length does not match digraph");
  if (start < 0 || start >= n) throw std::invalid_argument("start vertex out of range");
  for (Index v = 0; v < n; ++v)
    if (g.out_neighbors(v).empty())
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " has an empty out-neighborhood");

  std::vector<Index> seen_at(static_cast<std::size_t>(n), -1);
  std::vector<Index> walk;
  Index cur = start;
  while (seen_at[static_cast<std::size_t>(cur)] < 0) {
    seen_at[static_cast<std::size_t>(cur)] = static_cast<Index>(walk.size());
    walk.push_back(cur);
    const auto& nb = g.out_neighbors(cur);
    Index pick = nb.front();
    for (Index j : nb) {
      const bool better =
          sense == ExtremalSense::Max ? labels[j] > labels[pick] : labels[j] < labels[pick];
      if (better) pick = j;
    }
    cur = pick;
  }
  Circuit c;
  c.vertices.assign(walk.begin() + seen_at[static_cast<std::size_t>(cur)], walk.end());
  return c;
}

template <typename Scalar>
struct MeanCycleResult {
  Scalar value;
  Circuit witness;
};

namespace detail {

template <typename Scalar>
struct KarpResult {
  Scalar mean;
  Circuit witness;
};

// Karp's maximum cycle mean over arc weights w(u -> v) = tail_weight[u].
// D[k][v] = best weight of an exactly-k-edge walk from vertex 0 to v;
// the witness comes from walk reconstruction over the parent table.
template <typename Scalar>
KarpResult<Scalar> karp_max_mean(const TensorDigraph& g,
                                 const std::vector<Scalar>& tail_weight) {
  const Index n = g.n_vertices();
  const Scalar neg_inf = -std::numeric_limits<Scalar>::infinity();
  const std::size_t un = static_cast<std::size_t>(n);

  std::vector<std::vector<Scalar>> dp(un + 1, std::vector<Scalar>(un, neg_inf));
  std::vector<std::vector<Index>> parent(un + 1, std::vector<Index>(un, -1));
  dp[0][0] = 0;
  for (Index k = 1; k <= n; ++k) {
    const auto& prev = dp[static_cast<std::size_t>(k - 1)];
    auto& cur = dp[static_cast<std::size_t>(k)];
    auto& par = parent[static_cast<std::size_t>(k)];
    for (Index u = 0; u < n; ++u) {
      const Scalar du = prev[static_cast<std::size_t>(u)];
      if (du == neg_inf) continue;
      const Scalar cand_base = du + tail_weight[static_cast<std::size_t>(u)];
      for (Index v : g.out_neighbors(u)) {
        if (cand_base > cur[static_cast<std::size_t>(v)]) {
          cur[static_cast<std::size_t>(v)] = cand_base;
          par[static_cast<std::size_t>(v)] = u;
        }
      }
    }
  }

  Scalar best = neg_inf;
  Index best_v = -1;
  for (Index v = 0; v < n; ++v) {
    const Scalar dn = dp[un][static_cast<std::size_t>(v)];
    if (dn == neg_inf) continue;
    Scalar inner = std::numeric_limits<Scalar>::infinity();
    for (Index k = 0; k < n; ++k) {
      const Scalar dk = dp[static_cast<std::size_t>(k)][static_cast<std::size_t>(v)];
      if (dk == neg_inf) continue;
      inner = std::min(inner, (dn - dk) / static_cast<Scalar>(n - k));
    }
    if (inner > best) {
      best = inner;
      best_v = v;
    }
  }
  if (best_v < 0) throw std::invalid_argument("digraph has no circuit");

  // Walk of length n ending at best_v; any elementary cycle on it attains the
  // optimum, so take the first repetition found scanning backwards.
  std::vector<Index> walk(un + 1);
  walk[un] = best_v;
  for (Index k = n; k > 0; --k)
    walk[static_cast<std::size_t>(k - 1)] =
        parent[static_cast<std::size_t>(k)][static_cast<std::size_t>(walk[static_cast<std::size_t>(k)])];

  std::vector<Index> pos(un, -1);
  Circuit cyc;
  for (Index k = n; k >= 0; --k) {
    const Index v = walk[static_cast<std::size_t>(k)];
    if (pos[static_cast<std::size_t>(v)] >= 0) {
      const Index q = pos[static_cast<std::size_t>(v)];
      cyc.vertices.assign(walk.begin() + k, walk.begin() + q);
      break;
    }
    pos[static_cast<std::size_t>(v)] = k;
  }
  return {best, cyc.canonical()};
}

}  // namespace detail

/// Extremal geometric cycle mean over all circuits: extremum of
/// (prod_{i in gamma} w_i)^{1/|gamma|}, via Karp's characterization on
/// log weights. Requires a strongly connected digraph and positive weights.
template <typename Derived>
MeanCycleResult<typename Derived::Scalar> mean_cycle(const TensorDigraph& g,
                                                     const Eigen::MatrixBase<Derived>& weights_in,
                                                     ExtremalSense sense) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Ref<const VectorX<Scalar>> weights(weights_in.derived());
  const Index n = g.n_vertices();
  if (weights.size() != n)
    throw std::invalid_argument("weight vector length does not match digraph");
  for (Index i = 0; i < n; ++i)
    if (!(weights[i] > Scalar(0)) || !std::isfinite(weights[i]))
      throw std::invalid_argument("mean_cycle weights must be finite and positive");
  if (!is_weakly_irreducible(g))
    throw std::invalid_argument("mean_cycle requires a strongly connected digraph");

  std::vector<Scalar> logw(static_cast<std::size_t>(n));
  const Scalar sign = sense == ExtremalSense::Max ? Scalar(1) : Scalar(-1);
  for (Index i = 0; i < n; ++i) logw[static_cast<std::size_t>(i)] = sign * std::log(weights[i]);

  auto karp = detail::karp_max_mean<Scalar>(g, logw);
  return {std::exp(sign * karp.mean), std::move(karp.witness)};
}

/// All elementary circuits of length <= max_len, one per cyclic rotation
/// (canonical form: smallest vertex leads). Oracle-scale only: n <= 12.
inline std::vector<Circuit> enumerate_circuits(const TensorDigraph& g, Index max_len) {
  const Index n = g.n_vertices();
  if (n > 12)
    throw std::invalid_argument("circuit enumeration is limited to digraphs with n <= 12");
  if (max_len < 1) throw std::invalid_argument("max_len must be at least 1");
  const Index cap = std::min(max_len, n);

  std::vector<Circuit> out;
  std::vector<Index> path;
  std::vector<bool> on_path(static_cast<std::size_t>(n), false);

  // Anchored search: circuits are found from their smallest vertex, so each
  // one appears exactly once and already in canonical rotation.
  for (Index s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[static_cast<std::size_t>(s)] = true;
    auto dfs = [&](auto&& self, Index u) -> void {
      for (Index v : g.out_neighbors(u)) {
        if (v == s) {
          out.push_back(Circuit{path});
        } else if (v > s && !on_path[static_cast<std::size_t>(v)] &&
                   static_cast<Index>(path.size()) < cap) {
          path.push_back(v);
          on_path[static_cast<std::size_t>(v)] = true;
          self(self, v);
          path.pop_back();
          on_path[static_cast<std::size_t>(v)] = false;
        }
      }
    };
    dfs(dfs, s);
    on_path[static_cast<std::size_t>(s)] = false;
  }
  return out;
}

}  // namespace specrad
