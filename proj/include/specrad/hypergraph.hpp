// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specrad/bounds.hpp"
#include "specrad/digraph.hpp"
#include "specrad/sparse_tensor.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specrad {

/// k-uniform hypergraph: every edge is a set of exactly k distinct vertices.
/// Edges are stored sorted (within each edge and across edges) and unique.
class UniformHypergraph {
 public:
  UniformHypergraph(Index k, Index n_vertices, std::vector<std::vector<Index>> edges)
      : k_(k), n_(n_vertices) {
    if (k < 2) throw std::invalid_argument("hypergraph uniformity k must be at least 2");
    if (n_vertices < 1) throw std::invalid_argument("hypergraph needs at least one vertex");
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto& edge = edges[e];
      if (static_cast<Index>(edge.size()) != k)
        throw std::invalid_argument("edge " + std::to_string(e) + " does not have exactly " +
                                    std::to_string(k) + " vertices");
      std::sort(edge.begin(), edge.end());
      if (std::adjacent_find(edge.begin(), edge.end()) != edge.end())
        throw std::invalid_argument("edge " + std::to_string(e) + " has repeated vertices");
      if (edge.front() < 0 || edge.back() >= n_vertices)
        throw std::invalid_argument("edge " + std::to_string(e) + " has a vertex out of range");
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
      throw std::invalid_argument("duplicate edge");
    edges_ = std::move(edges);
  }

  Index k() const { return k_; }
  Index n_vertices() const { return n_; }
  const std::vector<std::vector<Index>>& edges() const { return edges_; }
  Index n_edges() const { return static_cast<Index>(edges_.size()); }

  /// degrees[i] = number of edges containing vertex i.
  std::vector<Index> degrees() const {
    std::vector<Index> d(static_cast<std::size_t>(n_), 0);
    for (const auto& edge : edges_)
      for (Index v : edge) ++d[static_cast<std::size_t>(v)];
    return d;
  }

 private:
  Index k_;
  Index n_;
  std::vector<std::vector<Index>> edges_;
};

/// Order-k symmetric tensor with every permutation of every edge at value
/// 1/(k-1)!; slice sums equal the degrees.
template <typename Scalar = double>
SparseTensor<Scalar> adjacency_tensor(const UniformHypergraph& h) {
  const Index k = h.k();
  Scalar fact = 1;
  for (Index i = 2; i < k; ++i) fact *= static_cast<Scalar>(i);
  const Scalar val = Scalar(1) / fact;

  std::vector<Index> subs;
  std::vector<Scalar> vals;
  for (const auto& edge : h.edges()) {
    std::vector<Index> perm = edge;  // sorted, so next_permutation covers all k!
    do {
      subs.insert(subs.end(), perm.begin(), perm.end());
      vals.push_back(val);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return SparseTensor<Scalar>::from_coordinates(k, h.n_vertices(), std::move(subs),
                                                std::move(vals));
}

/// Diagonal order-k tensor with a_{i...i} = degree of i (zero degrees omitted).
template <typename Scalar = double>
SparseTensor<Scalar> degree_tensor(const UniformHypergraph& h) {
  std::vector<Index> subs;
  std::vector<Scalar> vals;
  const auto deg = h.degrees();
  for (Index i = 0; i < h.n_vertices(); ++i) {
    if (deg[static_cast<std::size_t>(i)] == 0) continue;
    subs.insert(subs.end(), static_cast<std::size_t>(h.k()), i);
    vals.push_back(static_cast<Scalar>(deg[static_cast<std::size_t>(i)]));
  }
  return SparseTensor<Scalar>::from_coordinates(h.k(), h.n_vertices(), std::move(subs),
                                                std::move(vals));
}

/// Q = D + A: degree diagonal plus adjacency; slice sums are 2 * degrees.
template <typename Scalar = double>
SparseTensor<Scalar> signless_laplacian_tensor(const UniformHypergraph& h) {
  std::vector<Index> subs;
  std::vector<Scalar> vals;
  auto append = [&](const SparseTensor<Scalar>& t) {
    for (Index e = 0; e < t.nnz(); ++e) {
      const auto tup = t.tuple(e);
      subs.insert(subs.end(), tup.begin(), tup.end());
      vals.push_back(t.value(e));
    }
  };
  append(degree_tensor<Scalar>(h));
  append(adjacency_tensor<Scalar>(h));  // diagonal and edge tuples never collide (k >= 2)
  return SparseTensor<Scalar>::from_coordinates(h.k(), h.n_vertices(), std::move(subs),
                                                std::move(vals));
}

/// Single connected component under edge incidence. Agrees with weak
/// irreducibility of the adjacency tensor's digraph.
inline bool is_connected(const UniformHypergraph& h) {
  const Index n = h.n_vertices();
  if (n == 1) return true;

  std::vector<std::vector<Index>> incident(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < h.edges().size(); ++e)
    for (Index v : h.edges()[e]) incident[static_cast<std::size_t>(v)].push_back(static_cast<Index>(e));

  std::vector<bool> v_seen(static_cast<std::size_t>(n), false);
  std::vector<bool> e_seen(h.edges().size(), false);
  std::vector<Index> stack{0};
  v_seen[0] = true;
  Index count = 1;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (Index e : incident[static_cast<std::size_t>(u)]) {
      if (e_seen[static_cast<std::size_t>(e)]) continue;
      e_seen[static_cast<std::size_t>(e)] = true;
      for (Index w : h.edges()[static_cast<std::size_t>(e)]) {
        if (!v_seen[static_cast<std::size_t>(w)]) {
          v_seen[static_cast<std::size_t>(w)] = true;
          ++count;
          stack.push_back(w);
        }
      }
    }
  }
  return count == n;
}

enum class HypergraphTensorKind { Adjacency, SignlessLaplacian };

/// Degree-product circuit bounds: weights d_i over G_A for the adjacency
/// tensor, 2 d_i over G_Q for the signless Laplacian.
template <typename Scalar = double>
BoundInterval<Scalar> degree_circuit_bounds(const UniformHypergraph& h,
                                            HypergraphTensorKind which) {
  if (!is_connected(h))
    throw std::invalid_argument("degree bounds require a connected hypergraph");
  if (h.n_edges() == 0)
    throw std::invalid_argument("degree bounds require at least one edge");

  const SparseTensor<Scalar> t = which == HypergraphTensorKind::Adjacency
                                     ? adjacency_tensor<Scalar>(h)
                                     : signless_laplacian_tensor<Scalar>(h);
  const Index expected_girth = which == HypergraphTensorKind::Adjacency ? 2 : 1;
  if (girth(build_digraph(t)) != expected_girth)
    throw std::logic_error("hypergraph digraph girth assertion failed");
  return circuit_slice_bounds(t);
}

struct DegreeStats {
  Index d_max;
  double d_avg;
};

inline DegreeStats degree_stats(const UniformHypergraph& h) {
  const auto deg = h.degrees();
  Index d_max = 0;
  double sum = 0;
  for (Index d : deg) {
    d_max = std::max(d_max, d);
    sum += static_cast<double>(d);
  }
  return {d_max, sum / static_cast<double>(h.n_vertices())};
}

}  // namespace specrad
