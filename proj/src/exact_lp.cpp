#include "cycdec/exact_lp.hpp"

#include <map>

#include "cycdec/error.hpp"

namespace cycdec {

std::optional<RVector> solve_exact_linear(const RMatrix& matrix, const RVector& rhs) {
  if (matrix.rows() != rhs.size()) {
    throw Error(ErrorCode::Contract, "solve_exact_linear: row count does not match rhs");
  }
  return exact_solve(matrix, rhs);
}

bool affinely_independent(const std::vector<IntPoint>& points) {
  if (points.size() <= 1) return true;
  const auto dim = static_cast<Eigen::Index>(points.front().size());
  RMatrix diffs(dim, static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t k = 1; k < points.size(); ++k) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      diffs(i, static_cast<Eigen::Index>(k - 1)) =
          Rational(points[k][static_cast<std::size_t>(i)] - points.front()[static_cast<std::size_t>(i)]);
    }
  }
  return exact_rank(diffs) == diffs.cols();
}

std::optional<BarycentricSolution> barycentric_vertex(const std::vector<IntPoint>& points,
                                                      const IntPoint& target) {
  if (points.empty()) throw Error(ErrorCode::Contract, "barycentric_vertex: no points");
  const std::size_t dim = target.size();
  std::vector<std::size_t> unique;
  std::map<IntPoint, std::size_t> seen;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (points[k].size() != dim) throw Error(ErrorCode::Contract, "barycentric_vertex: dimension mismatch");
    if (seen.emplace(points[k], k).second) unique.push_back(k);
  }
  if (const auto it = seen.find(target); it != seen.end()) {
    return BarycentricSolution{{it->second}, {Rational(1)}};
  }

  const auto rows = static_cast<Eigen::Index>(dim + 1);
  const auto cols = static_cast<Eigen::Index>(unique.size());
  RMatrix a(rows, cols);
  RVector b(rows);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const IntPoint& p = points[unique[static_cast<std::size_t>(j)]];
    for (std::size_t i = 0; i < dim; ++i) a(static_cast<Eigen::Index>(i), j) = Rational(p[i]);
    a(rows - 1, j) = Rational(1);
  }
  for (std::size_t i = 0; i < dim; ++i) b(static_cast<Eigen::Index>(i)) = Rational(target[i]);
  b(rows - 1) = Rational(1);

  const auto vertex = feasible_vertex(a, b);
  if (!vertex) return std::nullopt;
  BarycentricSolution out;
  for (Eigen::Index j = 0; j < cols; ++j) {
    if ((*vertex)(j).sign() > 0) {
      out.support.push_back(unique[static_cast<std::size_t>(j)]);
      out.coefficients.push_back((*vertex)(j));
    }
  }
  return out;
}

LpResult lp_feasible(const RMatrix& a_ub, const RVector& b_ub, const RMatrix& a_eq, const RVector& b_eq,
                     Eigen::Index dimension) {
  const Eigen::Index n_ub = a_ub.rows();
  const Eigen::Index n_eq = a_eq.rows();
  if ((n_ub > 0 && a_ub.cols() != dimension) || (n_eq > 0 && a_eq.cols() != dimension) ||
      b_ub.size() != n_ub || b_eq.size() != n_eq) {
    throw Error(ErrorCode::Contract, "lp_feasible: inconsistent constraint dimensions");
  }
  // slack variables turn the inequalities into equalities
  RMatrix a = RMatrix::Zero(n_ub + n_eq, dimension + n_ub);
  RVector b(n_ub + n_eq);
  if (n_ub > 0) {
    a.topLeftCorner(n_ub, dimension) = a_ub;
    for (Eigen::Index i = 0; i < n_ub; ++i) a(i, dimension + i) = Rational(1);
    b.head(n_ub) = b_ub;
  }
  if (n_eq > 0) {
    a.bottomLeftCorner(n_eq, dimension) = a_eq;
    b.tail(n_eq) = b_eq;
  }
  if (a.rows() == 0) return LpResult{true, RVector::Zero(dimension)};
  const auto vertex = feasible_vertex(a, b);
  if (!vertex) return LpResult{false, RVector()};
  return LpResult{true, vertex->head(dimension)};
}

}  // namespace cycdec
