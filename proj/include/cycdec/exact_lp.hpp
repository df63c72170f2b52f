#pragma once

// Exact linear systems, convex-hull membership with vertex (Carathéodory)
// witnesses, and LP feasibility.

#include <cstdint>
#include <optional>
#include <vector>

#include "cycdec/linalg.hpp"
#include "cycdec/rational.hpp"

namespace cycdec {

using IntPoint = std::vector<std::int64_t>;

/// Barycentric coordinates of a target on an affinely independent subset of
/// the input points. Coefficients are strictly positive and sum to one.
struct BarycentricSolution {
  std::vector<std::size_t> support;  // indices into the caller's point list
  std::vector<Rational> coefficients;
};

struct LpResult {
  bool feasible = false;
  RVector witness;  // empty when infeasible
};

/// Exact solution of `matrix * x = rhs`; nullopt when inconsistent. For an
/// underdetermined consistent system the free variables are zero.
std::optional<RVector> solve_exact_linear(const RMatrix& matrix, const RVector& rhs);

/// A vertex of {mu >= 0, sum mu = 1, sum mu_i points_i = target}, restricted
/// to its positive entries, or nullopt when the target is outside the convex
/// hull. Duplicate points are ignored (the first occurrence is kept); a
/// target equal to a point yields that point alone with coefficient one.
std::optional<BarycentricSolution> barycentric_vertex(const std::vector<IntPoint>& points,
                                                      const IntPoint& target);

/// Exact feasibility of {x >= 0, a_ub x <= b_ub, a_eq x = b_eq}. Either block
/// may have zero rows; `dimension` fixes the number of variables.
LpResult lp_feasible(const RMatrix& a_ub, const RVector& b_ub, const RMatrix& a_eq, const RVector& b_eq,
                     Eigen::Index dimension);

/// Affine independence of the given points, by exact rank of the difference
/// vectors from the first one.
bool affinely_independent(const std::vector<IntPoint>& points);

}  // namespace cycdec
