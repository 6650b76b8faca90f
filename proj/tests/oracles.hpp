// SPDX-License-Identifier: Apache-2.0
#pragma once

// Test-side oracles and random instance generators. The oracles stay
// independent of the code paths they cross-check: circuit means are
// extremized by explicit enumeration with direct products (no log space),
// and matrix spectral radii come from a dense power iteration on plain
// Eigen matrices.

#include "specrad/digraph.hpp"
#include "specrad/sparse_tensor.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

using specrad::Circuit;
using specrad::ExtremalSense;
using specrad::Index;
using specrad::SparseTensor;
using specrad::TensorDigraph;

struct BruteMeanCycle {
  double min_value;
  double max_value;
  Circuit min_witness;
  Circuit max_witness;
};

/// Extremizes (prod w_i)^(1/len) over all elementary circuits by enumeration.
inline BruteMeanCycle brute_mean_cycle(const TensorDigraph& g, const Eigen::VectorXd& w) {
  const auto circuits = specrad::enumerate_circuits(g, g.n_vertices());
  if (circuits.empty()) throw std::runtime_error("oracle: digraph has no circuit");
  BruteMeanCycle out{std::numeric_limits<double>::infinity(),
                     -std::numeric_limits<double>::infinity(), {}, {}};
  for (const auto& c : circuits) {
    double prod = 1.0;
    for (Index v : c.vertices) prod *= w[v];
    const double mean = std::pow(prod, 1.0 / static_cast<double>(c.vertices.size()));
    if (mean < out.min_value) {
      out.min_value = mean;
      out.min_witness = c;
    }
    if (mean > out.max_value) {
      out.max_value = mean;
      out.max_witness = c;
    }
  }
  return out;
}

/// Classical Collatz power iteration for the Perron root of a nonnegative
/// irreducible matrix, run on the dense shifted matrix M + I.
inline double dense_power_iteration_rho(const Eigen::MatrixXd& m, double tol = 1e-12,
                                        long max_iter = 500000) {
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd b = m + Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  for (long it = 0; it < max_iter; ++it) {
    const Eigen::VectorXd y = b * x;
    const Eigen::ArrayXd r = y.array() / x.array();
    if (r.maxCoeff() - r.minCoeff() <= tol) return (r.maxCoeff() + r.minCoeff()) / 2 - 1.0;
    x = y / y.maxCoeff();
  }
  throw std::runtime_error("oracle power iteration did not converge");
}

/// Every consecutive step of the circuit picks an extremal-label out-neighbor.
inline bool satisfies_extremal_step(const TensorDigraph& g, const Eigen::VectorXd& labels,
                                    const Circuit& c, ExtremalSense sense) {
  const Index len = c.length();
  for (Index k = 0; k < len; ++k) {
    const Index u = c.vertices[static_cast<std::size_t>(k)];
    const Index v = c.vertices[static_cast<std::size_t>((k + 1) % len)];
    if (!g.has_arc(u, v)) return false;
    for (Index j : g.out_neighbors(u)) {
      const bool beats = sense == ExtremalSense::Max ? labels[j] > labels[v] : labels[j] < labels[v];
      if (beats) return false;
    }
  }
  return true;
}

inline SparseTensor<double> tensor_from_matrix(const Eigen::MatrixXd& m) {
  std::vector<Index> subs;
  std::vector<double> vals;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) {
        subs.push_back(i);
        subs.push_back(j);
        vals.push_back(m(i, j));
      }
    }
  }
  return SparseTensor<double>::from_coordinates(2, m.rows(), std::move(subs), std::move(vals));
}

inline Eigen::MatrixXd matrix_from_tensor(const SparseTensor<double>& t) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t.dim(), t.dim());
  for (Index e = 0; e < t.nnz(); ++e) m(t.tuple(e)[0], t.tuple(e)[1]) = t.value(e);
  return m;
}

/// Random order-m dimension-n tensor with roughly `density` of all n^m tuples
/// present; redrawn until weakly irreducible.
inline SparseTensor<double> random_weakly_irreducible_tensor(std::mt19937& rng, Index m, Index n,
                                                             double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> val(0.5, 2.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Index> subs;
    std::vector<double> vals;
    std::vector<Index> tuple(static_cast<std::size_t>(m), 0);
    while (true) {
      if (coin(rng) < density) {
        subs.insert(subs.end(), tuple.begin(), tuple.end());
        vals.push_back(val(rng));
      }
      Index pos = m - 1;
      while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == n) {
        tuple[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    if (vals.empty()) continue;
    auto t = SparseTensor<double>::from_coordinates(m, n, std::move(subs), std::move(vals));
    if (specrad::is_weakly_irreducible(specrad::build_digraph(t))) return t;
  }
  throw std::runtime_error("failed to draw a weakly irreducible tensor");
}

inline TensorDigraph random_strongly_connected_digraph(std::mt19937& rng, Index n,
                                                       double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::pair<Index, Index>> arcs;
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (coin(rng) < (i == j ? density / 2 : density)) arcs.emplace_back(i, j);
    if (n == 1 && arcs.empty()) arcs.emplace_back(0, 0);  // a circuit must exist
    TensorDigraph g(n, std::move(arcs));
    if (specrad::is_weakly_irreducible(g) && g.arc_count() > 0) return g;
  }
  throw std::runtime_error("failed to draw a strongly connected digraph");
}

inline Eigen::MatrixXd random_irreducible_matrix(std::mt19937& rng, Index n, double density) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_real_distribution<double> val(0.1, 2.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (coin(rng) < density) m(i, j) = val(rng);
    if (m.sum() == 0.0) continue;
    if (specrad::is_weakly_irreducible(specrad::build_digraph(tensor_from_matrix(m)))) return m;
  }
  throw std::runtime_error("failed to draw an irreducible matrix");
}

/// Random positive scaling vector with log-uniform components.
inline Eigen::VectorXd random_positive_vector(std::mt19937& rng, Index n, double lo = 0.2,
                                              double hi = 5.0) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  Eigen::VectorXd d(n);
  for (Index i = 0; i < n; ++i) d[i] = std::exp(u(rng));
  return d;
}

}  // namespace oracles
