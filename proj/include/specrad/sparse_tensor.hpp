// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace specrad {

using Index = Eigen::Index;

template <typename Scalar>
using VectorX = Eigen::Vector<Scalar, Eigen::Dynamic>;

/// Order-m, dimension-n nonnegative tensor in coordinate form.
///
/// Only strictly positive entries are stored; nonnegativity is structural
/// (a missing tuple is an exact zero). Tuples are 0-based, kept sorted
/// lexicographically, and unique. Immutable after construction.
template <typename Scalar = double>
class SparseTensor {
 public:
  using EntryList = std::vector<std::pair<std::vector<Index>, Scalar>>;

  SparseTensor(Index order, Index dim, const EntryList& entries)
      : SparseTensor(build(order, dim, entries)) {}

  /// Builds from flat coordinate storage: subscripts.size() == values.size() * order,
  /// entry e occupying subscripts[e*order .. e*order+order). Input need not be sorted.
  static SparseTensor from_coordinates(Index order, Index dim, std::vector<Index> subscripts,
                                       std::vector<Scalar> values) {
    if (order < 2) throw std::invalid_argument("tensor order must be at least 2");
    if (dim < 1) throw std::invalid_argument("tensor dimension must be at least 1");
    const Index nnz = static_cast<Index>(values.size());
    if (static_cast<Index>(subscripts.size()) != nnz * order)
      throw std::invalid_argument("subscript array size does not match entry count");
    for (Index e = 0; e < nnz; ++e) {
      for (Index j = 0; j < order; ++j) {
        const Index i = subscripts[e * order + j];
        if (i < 0 || i >= dim)
          throw std::invalid_argument("tensor index out of range at entry " + std::to_string(e));
      }
      if (!(values[e] > Scalar(0)) || !std::isfinite(values[e]))
        throw std::invalid_argument("tensor entries must be finite and strictly positive (entry " +
                                    std::to_string(e) + ")");
    }

    std::vector<Index> perm(nnz);
    std::iota(perm.begin(), perm.end(), Index(0));
    std::sort(perm.begin(), perm.end(), [&](Index a, Index b) {
      return std::lexicographical_compare(
          subscripts.begin() + a * order, subscripts.begin() + (a + 1) * order,
          subscripts.begin() + b * order, subscripts.begin() + (b + 1) * order);
    });

    SparseTensor t;
    t.order_ = order;
    t.dim_ = dim;
    t.subs_.resize(subscripts.size());
    t.values_.resize(values.size());
    for (Index e = 0; e < nnz; ++e) {
      std::copy_n(subscripts.begin() + perm[e] * order, order, t.subs_.begin() + e * order);
      t.values_[e] = values[perm[e]];
    }
    for (Index e = 1; e < nnz; ++e) {
      if (std::equal(t.subs_.begin() + (e - 1) * order, t.subs_.begin() + e * order,
                     t.subs_.begin() + e * order))
        throw std::invalid_argument("duplicate index tuple at entry " + std::to_string(e));
    }
    return t;
  }

  Index order() const { return order_; }
  Index dim() const { return dim_; }
  Index nnz() const { return static_cast<Index>(values_.size()); }

  std::span<const Index> tuple(Index e) const {
    return {subs_.data() + e * order_, static_cast<std::size_t>(order_)};
  }
  Scalar value(Index e) const { return values_[e]; }

  /// Position of a tuple in storage order, or -1 when absent.
  Index find(std::span<const Index> key) const {
    if (static_cast<Index>(key.size()) != order_)
      throw std::invalid_argument("lookup tuple arity does not match tensor order");
    Index lo = 0, hi = nnz();
    while (lo < hi) {
      const Index mid = lo + (hi - lo) / 2;
      const auto tup = tuple(mid);
      if (std::lexicographical_compare(tup.begin(), tup.end(), key.begin(), key.end()))
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo < nnz()) {
      const auto tup = tuple(lo);
      if (std::equal(tup.begin(), tup.end(), key.begin(), key.end())) return lo;
    }
    return -1;
  }

  Scalar coeff(std::span<const Index> key) const {
    const Index p = find(key);
    return p < 0 ? Scalar(0) : values_[p];
  }
  Scalar coeff(std::initializer_list<Index> key) const {
    return coeff(std::span<const Index>(key.begin(), key.size()));
  }

 private:
  SparseTensor() = default;

  static SparseTensor build(Index order, Index dim, const EntryList& entries) {
    std::vector<Index> subs;
    std::vector<Scalar> vals;
    subs.reserve(entries.size() * static_cast<std::size_t>(std::max<Index>(order, 0)));
    vals.reserve(entries.size());
    for (std::size_t e = 0; e < entries.size(); ++e) {
      const auto& [idx, val] = entries[e];
      if (static_cast<Index>(idx.size()) != order)
        throw std::invalid_argument("index tuple arity does not match tensor order (entry " +
                                    std::to_string(e) + ")");
      subs.insert(subs.end(), idx.begin(), idx.end());
      vals.push_back(val);
    }
    return from_coordinates(order, dim, std::move(subs), std::move(vals));
  }

  Index order_ = 0;
  Index dim_ = 0;
  std::vector<Index> subs_;    // nnz * order, lexicographically sorted tuples
  std::vector<Scalar> values_; // parallel to tuples
};

using SparseTensorXd = SparseTensor<double>;

namespace detail {

template <typename Scalar>
void require_positive_vector(const Eigen::Ref<const VectorX<Scalar>>& x, Index n,
                             const char* what) {
  if (x.size() != n)
    throw std::invalid_argument(std::string(what) + ": length does not match tensor dimension");
  for (Index i = 0; i < n; ++i)
    if (!(x[i] > Scalar(0)) || !std::isfinite(x[i]))
      throw std::invalid_argument(std::string(what) + ": components must be finite and positive");
}

}  // namespace detail

/// (A x^{m-1})_i = sum over entries with first index i of a * x_{i2} ... x_{im}.
/// Entries are accumulated in storage (lexicographic) order.
template <typename Scalar, typename Derived>
VectorX<Scalar> contract(const SparseTensor<Scalar>& t, const Eigen::MatrixBase<Derived>& x) {
  static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                "vector scalar type must match the tensor");
  const Eigen::Ref<const VectorX<Scalar>> xr(x.derived());
  detail::require_positive_vector<Scalar>(xr, t.dim(), "contract");
  VectorX<Scalar> y = VectorX<Scalar>::Zero(t.dim());
  const Index m = t.order();
  for (Index e = 0; e < t.nnz(); ++e) {
    const auto tup = t.tuple(e);
    Scalar term = t.value(e);
    for (Index j = 1; j < m; ++j) term *= xr[tup[j]];
    y[tup[0]] += term;
  }
  return y;
}

/// K_i: sum of all entries whose first index is i. Matches contract(t, ones) exactly.
template <typename Scalar>
VectorX<Scalar> slice_sums(const SparseTensor<Scalar>& t) {
  VectorX<Scalar> k = VectorX<Scalar>::Zero(t.dim());
  for (Index e = 0; e < t.nnz(); ++e) k[t.tuple(e)[0]] += t.value(e);
  return k;
}

/// B = D^{-(m-1)} A D for D = diag(d): b_{i1...im} = d_{i1}^{-(m-1)} a_{i1...im} d_{i2} ... d_{im}.
/// Same sparsity pattern; same spectrum.
template <typename Scalar, typename Derived>
SparseTensor<Scalar> diagonal_similarity(const SparseTensor<Scalar>& t,
                                         const Eigen::MatrixBase<Derived>& d_in) {
  static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                "vector scalar type must match the tensor");
  const Eigen::Ref<const VectorX<Scalar>> d(d_in.derived());
  detail::require_positive_vector<Scalar>(d, t.dim(), "diagonal_similarity");
  const Index m = t.order();
  std::vector<Index> subs;
  std::vector<Scalar> vals;
  subs.reserve(static_cast<std::size_t>(t.nnz() * m));
  vals.reserve(static_cast<std::size_t>(t.nnz()));
  for (Index e = 0; e < t.nnz(); ++e) {
    const auto tup = t.tuple(e);
    Scalar v = t.value(e) / std::pow(d[tup[0]], Scalar(m - 1));
    for (Index j = 1; j < m; ++j) v *= d[tup[j]];
    subs.insert(subs.end(), tup.begin(), tup.end());
    vals.push_back(v);
  }
  return SparseTensor<Scalar>::from_coordinates(m, t.dim(), std::move(subs), std::move(vals));
}

/// max_i |(Ax^{m-1})_i - lambda x_i^{m-1}| / max(1, |lambda| max_i x_i^{m-1}).
/// Zero exactly when (lambda, x) is an eigenpair.
template <typename Scalar, typename Derived>
Scalar eigen_residual(const SparseTensor<Scalar>& t, Scalar lambda,
                      const Eigen::MatrixBase<Derived>& x_in) {
  static_assert(std::is_same_v<typename Derived::Scalar, Scalar>,
                "vector scalar type must match the tensor");
  const Eigen::Ref<const VectorX<Scalar>> x(x_in.derived());
  const VectorX<Scalar> y = contract(t, x);
  const Index m = t.order();
  Scalar num = 0, xpow_max = 0;
  for (Index i = 0; i < t.dim(); ++i) {
    const Scalar xp = std::pow(x[i], Scalar(m - 1));
    num = std::max(num, std::abs(y[i] - lambda * xp));
    xpow_max = std::max(xpow_max, xp);
  }
  return num / std::max(Scalar(1), std::abs(lambda) * xpow_max);
}

/// Adds s to every diagonal entry a_{i...i}, creating missing ones.
/// Shifts all eigenvalues by s and puts a loop at every digraph vertex.
template <typename Scalar>
SparseTensor<Scalar> add_identity_shift(const SparseTensor<Scalar>& t, Scalar s) {
  if (!(s > Scalar(0)) || !std::isfinite(s))
    throw std::invalid_argument("add_identity_shift: shift must be finite and positive");
  const Index m = t.order(), n = t.dim();
  std::vector<Index> subs;
  std::vector<Scalar> vals;
  subs.reserve(static_cast<std::size_t>((t.nnz() + n) * m));
  vals.reserve(static_cast<std::size_t>(t.nnz() + n));
  for (Index e = 0; e < t.nnz(); ++e) {
    const auto tup = t.tuple(e);
    subs.insert(subs.end(), tup.begin(), tup.end());
    vals.push_back(t.value(e));
  }

  std::vector<bool> present(static_cast<std::size_t>(n), false);
  for (Index e = 0; e < t.nnz(); ++e) {
    const auto tup = t.tuple(e);
    if (std::all_of(tup.begin(), tup.end(), [&](Index i) { return i == tup[0]; })) {
      vals[e] += s;
      present[static_cast<std::size_t>(tup[0])] = true;
    }
  }
  for (Index i = 0; i < n; ++i) {
    if (present[static_cast<std::size_t>(i)]) continue;
    subs.insert(subs.end(), static_cast<std::size_t>(m), i);
    vals.push_back(s);
  }
  return SparseTensor<Scalar>::from_coordinates(m, n, std::move(subs), std::move(vals));
}

/// Multiplies every entry by c > 0.
template <typename Scalar>
SparseTensor<Scalar> scale(const SparseTensor<Scalar>& t, Scalar c) {
  if (!(c > Scalar(0)) || !std::isfinite(c))
    throw std::invalid_argument("scale: factor must be finite and positive");
  const Index m = t.order();
  std::vector<Index> subs;
  std::vector<Scalar> vals;
  subs.reserve(static_cast<std::size_t>(t.nnz() * m));
  vals.reserve(static_cast<std::size_t>(t.nnz()));
  for (Index e = 0; e < t.nnz(); ++e) {
    const auto tup = t.tuple(e);
    subs.insert(subs.end(), tup.begin(), tup.end());
    vals.push_back(t.value(e) * c);
  }
  return SparseTensor<Scalar>::from_coordinates(m, t.dim(), std::move(subs), std::move(vals));
}

/// True iff every entry is invariant under all permutations of its index tuple.
template <typename Scalar>
bool is_symmetric(const SparseTensor<Scalar>& t) {
  std::set<std::vector<Index>> checked;
  for (Index e = 0; e < t.nnz(); ++e) {
    const auto tup = t.tuple(e);
    std::vector<Index> rep(tup.begin(), tup.end());
    std::sort(rep.begin(), rep.end());
    if (!checked.insert(rep).second) continue;

    const Index rpos = t.find(rep);
    if (rpos < 0) return false;
    const Scalar v = t.value(rpos);
    std::vector<Index> perm = rep;
    do {
      const Index p = t.find(perm);
      if (p < 0 || t.value(p) != v) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return true;
}

}  // namespace specrad
