// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "specrad/digraph.hpp"
#include "specrad/sparse_tensor.hpp"

#include <cmath>
#include <limits>
#include <type_traits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace specrad {

struct IterationConfig {
  double tolerance = 1e-10;
  long max_iterations = 100000;
  double shift = 1.0;
};

/// Spectral radius estimate with its positive eigenvector (max entry 1),
/// the final Collatz-Wielandt bracket, and the eigen-equation residual.
template <typename Scalar = double>
struct PerronPair {
  Scalar rho;
  VectorX<Scalar> vector;
  Scalar bracket_low;
  Scalar bracket_high;
  Scalar residual;
  long iterations;
};

/// Thrown when the iteration budget runs out; carries the best bracket seen.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string msg, double low, double high, long iters)
      : std::runtime_error(std::move(msg)),
        bracket_low(low),
        bracket_high(high),
        iterations(iters) {}

  double bracket_low;
  double bracket_high;
  long iterations;
};

/// Per-iteration (lambda_min, lambda_max) brackets of the shifted iteration.
template <typename Scalar = double>
struct IterationTrace {
  std::vector<std::pair<Scalar, Scalar>> brackets;
};

/// (min_i, max_i) of (Ax^{m-1})_i / x_i^{m-1}; contains rho(A) for every
/// positive x when A is weakly irreducible.
template <typename Scalar, typename Derived>
std::pair<Scalar, Scalar> collatz_wielandt_bracket(const SparseTensor<Scalar>& t,
                                                   const Eigen::MatrixBase<Derived>& x_in) {
  static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                "vector scalar type must match the tensor");
  const Eigen::Ref<const VectorX<Scalar>> x(x_in.derived());
  const VectorX<Scalar> y = contract(t, x);
  const Index m = t.order();
  Scalar low = std::numeric_limits<Scalar>::infinity();
  Scalar high = -std::numeric_limits<Scalar>::infinity();
  for (Index i = 0; i < t.dim(); ++i) {
    const Scalar r = y[i] / std::pow(x[i], Scalar(m - 1));
    low = std::min(low, r);
    high = std::max(high, r);
  }
  return {low, high};
}

/// Power iteration on the shifted tensor B = A + shift*I:
///   y = B x^{m-1},  x <- y^{[1/(m-1)]} normalized to max entry 1,
/// stopping when the Collatz-Wielandt bracket of B at x is tighter than
/// cfg.tolerance. Reported rho is the bracket midpoint minus the shift.
template <typename Scalar>
PerronPair<Scalar> perron_pair(const SparseTensor<Scalar>& t, const IterationConfig& cfg = {},
                               const VectorX<Scalar>* start = nullptr,
                               IterationTrace<Scalar>* trace = nullptr) {
  if (!(cfg.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (cfg.shift < 0 || !std::isfinite(cfg.shift))
    throw std::invalid_argument("shift must be finite and nonnegative");
  if (!is_weakly_irreducible(build_digraph(t)))
    throw std::invalid_argument("Perron pair undefined: tensor is not weakly irreducible");

  const Index n = t.dim();
  const Index m = t.order();
  const Scalar shift = static_cast<Scalar>(cfg.shift);
  const SparseTensor<Scalar> shifted = cfg.shift > 0 ? add_identity_shift(t, shift) : t;

  VectorX<Scalar> x;
  if (start) {
    detail::require_positive_vector<Scalar>(*start, n, "perron_pair start vector");
    x = *start / start->maxCoeff();
  } else {
    x = VectorX<Scalar>::Ones(n);
  }

  Scalar lmin = 0, lmax = 0;
  for (long iter = 1; iter <= cfg.max_iterations; ++iter) {
    const VectorX<Scalar> y = contract(shifted, x);
    lmin = std::numeric_limits<Scalar>::infinity();
    lmax = -std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < n; ++i) {
      const Scalar r = y[i] / std::pow(x[i], Scalar(m - 1));
      lmin = std::min(lmin, r);
      lmax = std::max(lmax, r);
    }
    if (trace) trace->brackets.emplace_back(lmin, lmax);

    if (lmax - lmin <= static_cast<Scalar>(cfg.tolerance)) {
      const Scalar rho = (lmin + lmax) / 2 - shift;
      PerronPair<Scalar> pp;
      pp.rho = rho;
      pp.vector = std::move(x);
      pp.bracket_low = lmin - shift;
      pp.bracket_high = lmax - shift;
      pp.residual = eigen_residual(t, rho, pp.vector);
      pp.iterations = iter;
      return pp;
    }

    VectorX<Scalar> next(n);
    for (Index i = 0; i < n; ++i) next[i] = std::pow(y[i], Scalar(1) / Scalar(m - 1));
    next /= next.maxCoeff();
    for (Index i = 0; i < n; ++i)
      if (next[i] < Scalar(1e-300))
        throw ConvergenceError("power iteration underflow: component below 1e-300",
                               static_cast<double>(lmin - shift),
                               static_cast<double>(lmax - shift), iter);
    x = std::move(next);
  }
  throw ConvergenceError("power iteration did not converge within the iteration budget",
                         static_cast<double>(lmin - shift), static_cast<double>(lmax - shift),
                         cfg.max_iterations);
}

}  // namespace specrad
