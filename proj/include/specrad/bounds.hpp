// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specrad/digraph.hpp"
#include "specrad/sparse_tensor.hpp"
#include "specrad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace specrad {

enum class TheoremTag { CircuitSliceSum, GirthSorted, ScaledCircuit, DiagonalBalanced };

inline const char* theorem_tag_name(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::CircuitSliceSum: return "circuit_slice_sum";
    case TheoremTag::GirthSorted: return "girth_sorted";
    case TheoremTag::ScaledCircuit: return "scaled_circuit";
    case TheoremTag::DiagonalBalanced: return "diagonal_balanced";
  }
  return "unknown";
}

/// Certified interval containing rho(A), with the circuits that attain the
/// endpoints where the underlying bound is circuit-based.
template <typename Scalar = double>
struct BoundInterval {
  Scalar low;
  Scalar high;
  std::optional<Circuit> low_witness;
  std::optional<Circuit> high_witness;
  TheoremTag tag;
  // Set when numerical noise produced low > high by less than 1e-12 and the
  // endpoints were swapped rather than clamped.
  bool swapped = false;
};

namespace detail {

template <typename Scalar>
BoundInterval<Scalar> make_interval(Scalar low, Scalar high, std::optional<Circuit> low_witness,
                                    std::optional<Circuit> high_witness, TheoremTag tag) {
  BoundInterval<Scalar> iv{low, high, std::move(low_witness), std::move(high_witness), tag, false};
  if (iv.low > iv.high) {
    if (iv.low - iv.high >= Scalar(1e-12))
      throw std::logic_error("bound interval inverted beyond rounding noise");
    std::swap(iv.low, iv.high);
    std::swap(iv.low_witness, iv.high_witness);
    iv.swapped = true;
  }
  return iv;
}

template <typename Scalar>
void require_weakly_irreducible(const TensorDigraph& g) {
  if (!is_weakly_irreducible(g))
    throw std::invalid_argument("bounds require a weakly irreducible tensor");
}

// Geometric means of the g smallest and g largest weights.
template <typename Scalar>
std::pair<Scalar, Scalar> sorted_geometric_means(VectorX<Scalar> w, Index g) {
  std::sort(w.begin(), w.end());
  Scalar lo = 0, hi = 0;
  for (Index i = 0; i < g; ++i) {
    lo += std::log(w[i]);
    hi += std::log(w[w.size() - 1 - i]);
  }
  return {std::exp(lo / static_cast<Scalar>(g)), std::exp(hi / static_cast<Scalar>(g))};
}

}  // namespace detail

/// Circuit geometric-mean bounds on the slice sums:
/// min/max over circuits of (prod_{i in gamma} K_i)^{1/|gamma|}.
template <typename Scalar>
BoundInterval<Scalar> circuit_slice_bounds(const SparseTensor<Scalar>& t) {
  const TensorDigraph g = build_digraph(t);
  detail::require_weakly_irreducible<Scalar>(g);
  const VectorX<Scalar> k = slice_sums(t);
  auto lo = mean_cycle(g, k, ExtremalSense::Min);
  auto hi = mean_cycle(g, k, ExtremalSense::Max);
  return detail::make_interval<Scalar>(lo.value, hi.value, std::move(lo.witness),
                                       std::move(hi.witness), TheoremTag::CircuitSliceSum);
}

/// Girth-based sorted-slice-sum bounds: with g the girth and K sorted
/// ascending, (K_1...K_g)^{1/g} <= rho <= (K_{n-g+1}...K_n)^{1/g}.
/// Circuit-free, so no witnesses.
template <typename Scalar>
BoundInterval<Scalar> girth_sorted_bounds(const SparseTensor<Scalar>& t) {
  const TensorDigraph dg = build_digraph(t);
  detail::require_weakly_irreducible<Scalar>(dg);
  const Index g = girth(dg);
  auto [lo, hi] = detail::sorted_geometric_means<Scalar>(slice_sums(t), g);
  return detail::make_interval<Scalar>(lo, hi, std::nullopt, std::nullopt,
                                       TheoremTag::GirthSorted);
}

/// Circuit bounds over the per-vertex ratios r_i = (Ax^{m-1})_i / x_i^{m-1}
/// for a positive x; equals the circuit slice-sum bound of the diagonally
/// similar tensor X^{-(m-1)} A X.
template <typename Scalar, typename Derived>
BoundInterval<Scalar> scaled_circuit_bounds(const SparseTensor<Scalar>& t,
                                            const Eigen::MatrixBase<Derived>& x_in) {
  static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                "vector scalar type must match the tensor");
  const Eigen::Ref<const VectorX<Scalar>> x(x_in.derived());
  const TensorDigraph g = build_digraph(t);
  detail::require_weakly_irreducible<Scalar>(g);
  const VectorX<Scalar> y = contract(t, x);
  VectorX<Scalar> r(t.dim());
  for (Index i = 0; i < t.dim(); ++i) r[i] = y[i] / std::pow(x[i], Scalar(t.order() - 1));
  auto lo = mean_cycle(g, r, ExtremalSense::Min);
  auto hi = mean_cycle(g, r, ExtremalSense::Max);
  return detail::make_interval<Scalar>(lo.value, hi.value, std::move(lo.witness),
                                       std::move(hi.witness), TheoremTag::ScaledCircuit);
}

/// Sorted-slice-sum bounds of the diagonally similar tensor D^{-(m-1)} A D.
/// For any positive d the interval contains rho(A); at the Perron vector it
/// collapses onto rho.
template <typename Scalar, typename Derived>
BoundInterval<Scalar> balanced_slice_bounds(const SparseTensor<Scalar>& t,
                                            const Eigen::MatrixBase<Derived>& d) {
  static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                "vector scalar type must match the tensor");
  const SparseTensor<Scalar> b = diagonal_similarity(t, d.derived());
  const TensorDigraph dg = build_digraph(b);
  detail::require_weakly_irreducible<Scalar>(dg);
  const Index g = girth(dg);
  auto [lo, hi] = detail::sorted_geometric_means<Scalar>(slice_sums(b), g);
  return detail::make_interval<Scalar>(lo, hi, std::nullopt, std::nullopt,
                                       TheoremTag::DiagonalBalanced);
}

template <typename Scalar = double>
struct MinimaxCertificate {
  Scalar rho;
  VectorX<Scalar> x_star;
  Scalar gap;
};

/// Certifies the minimax characterization: at the Perron vector the scaled
/// circuit bounds collapse, so gap <= tolerance witnesses that both optima
/// are attained there.
template <typename Scalar>
MinimaxCertificate<Scalar> minimax_certificate(const SparseTensor<Scalar>& t,
                                               const IterationConfig& cfg = {}) {
  PerronPair<Scalar> pp = perron_pair(t, cfg);
  const BoundInterval<Scalar> iv = scaled_circuit_bounds<Scalar>(t, pp.vector);
  return {pp.rho, std::move(pp.vector), iv.high - iv.low};
}

template <typename Scalar = double>
struct BoundsReport {
  Scalar rho;
  std::vector<BoundInterval<Scalar>> intervals;
  bool all_contain_rho;
};

/// rho in [low, high] up to 1e-8 absolute-or-relative slack.
template <typename Scalar>
bool interval_contains(const BoundInterval<Scalar>& iv, Scalar rho) {
  const Scalar slack = Scalar(1e-8) * std::max(Scalar(1), std::abs(rho));
  return rho >= iv.low - slack && rho <= iv.high + slack;
}

/// All four intervals: circuit slice-sum, girth-sorted, scaled at the given
/// vector (all-ones when absent), balanced at the Perron vector (or at the
/// given vector when one is supplied).
template <typename Scalar>
BoundsReport<Scalar> full_report(const SparseTensor<Scalar>& t, const IterationConfig& cfg = {},
                                 const VectorX<Scalar>* scaling = nullptr) {
  const PerronPair<Scalar> pp = perron_pair(t, cfg);
  const VectorX<Scalar> ones = VectorX<Scalar>::Ones(t.dim());
  const VectorX<Scalar>& x_scaled = scaling ? *scaling : ones;
  const VectorX<Scalar>& d_balanced = scaling ? *scaling : pp.vector;

  BoundsReport<Scalar> report;
  report.rho = pp.rho;
  report.intervals.push_back(circuit_slice_bounds(t));
  report.intervals.push_back(girth_sorted_bounds(t));
  report.intervals.push_back(scaled_circuit_bounds<Scalar>(t, x_scaled));
  report.intervals.push_back(balanced_slice_bounds<Scalar>(t, d_balanced));
  report.all_contain_rho = std::all_of(report.intervals.begin(), report.intervals.end(),
                                       [&](const auto& iv) { return interval_contains(iv, pp.rho); });
  return report;
}

}  // namespace specrad
