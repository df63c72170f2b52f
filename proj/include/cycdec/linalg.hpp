#pragma once

// Exact dense linear algebra over an ordered field scalar (Rational in
// practice). Nothing here compares against a tolerance: a pivot is usable
// iff it is nonzero.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "cycdec/rational.hpp"

namespace cycdec {

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;                // reduced row echelon form
  std::vector<Eigen::Index> pivot_cols;  // one per nonzero row
};

template <typename Derived>
Echelon<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Echelon<Scalar> out{input, {}};
  Matrix<Scalar>& m = out.reduced;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = r; i < rows; ++i) {
      if (m(i, c) != Scalar(0)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      const Scalar factor = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) {
        if (m(r, j) != Scalar(0)) m(i, j) -= factor * m(r, j);
      }
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

template <typename Derived>
Eigen::Index exact_rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Eigen::Index>(reduced_row_echelon(m).pivot_cols.size());
}

/// One solution of `a * x = b` (free variables set to zero), or nullopt when
/// the system is inconsistent.
template <typename DerivedA, typename DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> exact_solve(const Eigen::MatrixBase<DerivedA>& a,
                                                             const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> augmented(a.rows(), a.cols() + 1);
  augmented << a, b;
  const auto ech = reduced_row_echelon(augmented);
  Vector<Scalar> x = Vector<Scalar>::Zero(a.cols());
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) {
    const Eigen::Index c = ech.pivot_cols[r];
    if (c == a.cols()) return std::nullopt;
    x(c) = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
  }
  return x;
}

/// Phase-one simplex with Bland's rule on {a x = b, x >= 0}. Returns a basic
/// feasible solution (a vertex of the polyhedron) or nullopt if empty. The
/// columns of `a` on the support of the returned point are linearly
/// independent.
template <typename Scalar>
std::optional<Vector<Scalar>> feasible_vertex(const Matrix<Scalar>& a, const Vector<Scalar>& b) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  const Eigen::Index rhs = n + m;
  Matrix<Scalar> t = Matrix<Scalar>::Zero(m + 1, n + m + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const bool flip = b(i) < Scalar(0);
    for (Eigen::Index j = 0; j < n; ++j) t(i, j) = flip ? Scalar(-a(i, j)) : a(i, j);
    t(i, rhs) = flip ? Scalar(-b(i)) : b(i);
    t(i, n + i) = Scalar(1);
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  // reduced costs of the phase-one objective (sum of artificials)
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) t(m, j) -= t(i, j);
    t(m, rhs) -= t(i, rhs);
  }

  for (;;) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (t(m, j) < Scalar(0)) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    Scalar best_ratio;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (!(t(i, enter) > Scalar(0))) continue;
      Scalar ratio = t(i, rhs) / t(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = std::move(ratio);
      }
    }
    // Phase one is bounded below by zero, so an entering column always has a
    // positive entry.
    if (leave < 0) return std::nullopt;

    const Scalar inv = Scalar(1) / t(leave, enter);
    for (Eigen::Index j = 0; j <= rhs; ++j) {
      if (t(leave, j) != Scalar(0)) t(leave, j) *= inv;
    }
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave || t(i, enter) == Scalar(0)) continue;
      const Scalar factor = t(i, enter);
      for (Eigen::Index j = 0; j <= rhs; ++j) {
        if (t(leave, j) != Scalar(0)) t(i, j) -= factor * t(leave, j);
      }
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  if (t(m, rhs) != Scalar(0)) return std::nullopt;
  Vector<Scalar> x = Vector<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<std::size_t>(i)];
    if (j < n) x(j) = t(i, rhs);
  }
  return x;
}

}  // namespace cycdec
