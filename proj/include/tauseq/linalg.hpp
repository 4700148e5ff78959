#pragma once

#include "tauseq/rational.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <vector>

// Exact dense linear algebra over a field scalar (Rational by default,
// Fp in cross-check mode). Everything here is deterministic: elimination
// pivots on the leftmost nonzero column and the topmost nonzero row, so
// kernels, solutions and echelon forms are bit-stable across runs.

namespace tauseq {

template <typename S>
using DenseMat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using DenseVec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Mat = DenseMat<Rational>;
using Vec = DenseVec<Rational>;

template <typename S>
bool is_zero_mat(const DenseMat<S>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) return false;
  return true;
}

template <typename S>
bool mat_eq(const DenseMat<S>& a, const DenseMat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename S>
bool vec_eq(const DenseVec<S>& a, const DenseVec<S>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

template <typename S>
bool is_zero_vec(const DenseVec<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

/// In-place reduced row echelon form. Returns the pivot columns in order.
template <typename S>
std::vector<Eigen::Index> rref_in_place(DenseMat<S>& a) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < a.cols() && row < a.rows(); ++col) {
    Eigen::Index pr = -1;
    for (Eigen::Index i = row; i < a.rows(); ++i)
      if (!a(i, col).is_zero()) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != row) a.row(pr).swap(a.row(row));
    const S inv = S(1) / a(row, col);
    for (Eigen::Index j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col).is_zero()) continue;
      const S f = a(i, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename S>
Eigen::Index rank(DenseMat<S> a) {
  return (Eigen::Index)rref_in_place(a).size();
}

/// Basis of the right kernel, one basis vector per column. The basis is the
/// standard one read off a reduced echelon form: count = cols - rank.
template <typename S>
DenseMat<S> kernel_basis(DenseMat<S> a) {
  const Eigen::Index n = a.cols();
  const auto pivots = rref_in_place(a);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  DenseMat<S> basis = DenseMat<S>::Zero(n, n - (Eigen::Index)pivots.size());
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    basis(free, k) = S(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      basis(pivots[r], k) = -a((Eigen::Index)r, free);
    ++k;
  }
  return basis;
}

/// Column span basis: the subset of columns forming a basis of the column
/// space, reduced to echelon-of-transpose coordinates for canonicity.
template <typename S>
DenseMat<S> column_space_basis(const DenseMat<S>& a) {
  DenseMat<S> t = a.transpose();
  const auto pivots = rref_in_place(t);
  DenseMat<S> basis(a.rows(), (Eigen::Index)pivots.size());
  for (std::size_t r = 0; r < pivots.size(); ++r) basis.col((Eigen::Index)r) = t.row((Eigen::Index)r).transpose();
  return basis;
}

template <typename S>
struct SolveResult {
  std::vector<std::optional<DenseVec<S>>> particular;  // one per target, empty when unsolvable
  DenseMat<S> kernel;                                  // shared kernel basis
};

/// Exact simultaneous solve of a x = target for a list of targets.
template <typename S>
SolveResult<S> solve_all(const DenseMat<S>& a, const std::vector<DenseVec<S>>& targets) {
  for (const auto& t : targets)
    if (t.size() != a.rows()) throw std::invalid_argument("solve_all: target length mismatch");
  DenseMat<S> aug(a.rows(), a.cols() + (Eigen::Index)targets.size());
  aug.leftCols(a.cols()) = a;
  for (std::size_t k = 0; k < targets.size(); ++k) aug.col(a.cols() + (Eigen::Index)k) = targets[k];
  auto pivots = rref_in_place(aug);
  SolveResult<S> out;
  // pivots in the augmented part flag which targets are inconsistent, but a
  // pivot column >= a.cols() only rules out targets at or after it; test each
  // target by looking for a leading entry in its own column.
  std::vector<Eigen::Index> a_pivots;
  for (auto p : pivots)
    if (p < a.cols()) a_pivots.push_back(p);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const Eigen::Index tc = a.cols() + (Eigen::Index)k;
    bool solvable = true;
    for (Eigen::Index i = (Eigen::Index)a_pivots.size(); i < aug.rows(); ++i) {
      bool lead_zero = true;
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        if (!aug(i, j).is_zero()) { lead_zero = false; break; }
      if (lead_zero && !aug(i, tc).is_zero()) { solvable = false; break; }
    }
    if (!solvable) {
      out.particular.emplace_back(std::nullopt);
      continue;
    }
    DenseVec<S> x = DenseVec<S>::Zero(a.cols());
    for (std::size_t r = 0; r < a_pivots.size(); ++r) x(a_pivots[r]) = aug((Eigen::Index)r, tc);
    out.particular.emplace_back(std::move(x));
  }
  out.kernel = kernel_basis(a);
  return out;
}

/// Single-target convenience wrapper.
template <typename S>
std::optional<DenseVec<S>> solve_one(const DenseMat<S>& a, const DenseVec<S>& target) {
  return solve_all<S>(a, {target}).particular[0];
}

/// Solve a X = B columnwise; empty when some column is unsolvable.
template <typename S>
std::optional<DenseMat<S>> solve_matrix(const DenseMat<S>& a, const DenseMat<S>& b) {
  std::vector<DenseVec<S>> targets;
  targets.reserve((std::size_t)b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) targets.push_back(b.col(j));
  auto res = solve_all(a, targets);
  DenseMat<S> x(a.cols(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j) {
    if (!res.particular[(std::size_t)j]) return std::nullopt;
    x.col(j) = *res.particular[(std::size_t)j];
  }
  return x;
}

template <typename S>
bool is_invertible(const DenseMat<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("is_invertible: matrix not square");
  return rank(m) == m.rows();
}

template <typename S>
DenseMat<S> inverse(const DenseMat<S>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const Eigen::Index n = m.rows();
  DenseMat<S> aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = DenseMat<S>::Identity(n, n);
  auto pivots = rref_in_place(aug);
  if (n > 0 && (pivots.empty() || pivots.back() >= n))
    throw std::domain_error("inverse: matrix is singular");
  return aug.rightCols(n);
}

/// Joint kernel of a family of matrices with a common column count.
template <typename S>
DenseMat<S> joint_kernel(const std::vector<DenseMat<S>>& mats, Eigen::Index cols) {
  Eigen::Index total = 0;
  for (const auto& m : mats) total += m.rows();
  DenseMat<S> stacked(total, cols);
  Eigen::Index at = 0;
  for (const auto& m : mats) {
    stacked.middleRows(at, m.rows()) = m;
    at += m.rows();
  }
  return kernel_basis(stacked);
}

template <typename S>
DenseMat<S> hstack(const DenseMat<S>& a, const DenseMat<S>& b) {
  DenseMat<S> out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

template <typename S>
DenseMat<S> vstack(const DenseMat<S>& a, const DenseMat<S>& b) {
  DenseMat<S> out(a.rows() + b.rows(), a.cols());
  out.topRows(a.rows()) = a;
  out.bottomRows(b.rows()) = b;
  return out;
}

/// vec(M) with columns stacked, matching the Kronecker identity
/// vec(A X B) = (B^T (x) A) vec(X).
template <typename S>
DenseVec<S> vectorize(const DenseMat<S>& m) {
  DenseVec<S> v(m.rows() * m.cols());
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) v(k++) = m(i, j);
  return v;
}

template <typename S>
DenseMat<S> unvectorize(const DenseVec<S>& v, Eigen::Index rows, Eigen::Index cols) {
  DenseMat<S> m(rows, cols);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = v(k++);
  return m;
}

template <typename S>
DenseMat<S> kronecker(const DenseMat<S>& a, const DenseMat<S>& b) {
  DenseMat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = b * a(i, j);
  return out;
}

template <typename S>
DenseMat<S> to_field(const Mat& m) {
  DenseMat<S> out(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(i, j) = S(m(i, j));
  return out;
}

}  // namespace tauseq
