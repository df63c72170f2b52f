#include "doctest.h"

#include <random>

#include "cycdec/error.hpp"
#include "cycdec/exact_lp.hpp"

using namespace cycdec;

namespace {

RMatrix rows_of(std::initializer_list<std::initializer_list<long long>> rows) {
  RMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (long long v : row) m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

RVector vec_of(std::initializer_list<Rational> values) {
  RVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

// Feasibility of {mu >= 0, sum mu = 1, sum mu_i p_i = t} through the generic LP.
bool hull_contains_by_lp(const std::vector<IntPoint>& points, const IntPoint& target) {
  const auto d = static_cast<Eigen::Index>(target.size());
  const auto k = static_cast<Eigen::Index>(points.size());
  RMatrix a(d + 1, k);
  RVector b(d + 1);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) a(i, j) = Rational(points[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
    a(d, j) = Rational(1);
  }
  for (Eigen::Index i = 0; i < d; ++i) b(i) = Rational(target[static_cast<std::size_t>(i)]);
  b(d) = Rational(1);
  return lp_feasible(RMatrix(0, k), RVector(0), a, b, k).feasible;
}

void check_solution(const std::vector<IntPoint>& points, const IntPoint& target, const BarycentricSolution& sol) {
  REQUIRE(sol.support.size() == sol.coefficients.size());
  Rational total(0);
  std::vector<Rational> combo(target.size(), Rational(0));
  std::vector<IntPoint> used;
  for (std::size_t k = 0; k < sol.support.size(); ++k) {
    CHECK(sol.coefficients[k] > Rational(0));
    total += sol.coefficients[k];
    const IntPoint& p = points[sol.support[k]];
    used.push_back(p);
    for (std::size_t i = 0; i < p.size(); ++i) combo[i] += sol.coefficients[k] * Rational(p[i]);
  }
  CHECK(total == Rational(1));
  for (std::size_t i = 0; i < target.size(); ++i) CHECK(combo[i] == Rational(target[i]));
  CHECK(affinely_independent(used));
}

}  // namespace

TEST_CASE("solve_exact_linear examples") {
  SUBCASE("identity") {
    const auto x = solve_exact_linear(RMatrix::Identity(2, 2), vec_of({Rational(1, 2), Rational(1, 3)}));
    REQUIRE(x);
    CHECK((*x)(0) == Rational(1, 2));
    CHECK((*x)(1) == Rational(1, 3));
  }
  SUBCASE("cramer system for the three-vector cycle") {
    const auto x = solve_exact_linear(rows_of({{2, -1, -1}, {-1, 2, -1}, {1, 1, 1}}),
                                      vec_of({Rational(0), Rational(0), Rational(1)}));
    REQUIRE(x);
    for (Eigen::Index i = 0; i < 3; ++i) CHECK((*x)(i) == Rational(1, 3));
  }
  SUBCASE("inconsistent") {
    CHECK_FALSE(solve_exact_linear(rows_of({{1, 1}, {2, 2}}), vec_of({Rational(1), Rational(3)})));
  }
  SUBCASE("dimension mismatch is a contract error") {
    CHECK_THROWS_AS(solve_exact_linear(RMatrix::Identity(2, 2), RVector::Zero(3)), Error);
  }
}

TEST_CASE("solve_exact_linear reproduces rhs bit-exactly on random systems") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long long> num(-50, 50), den(1, 13);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 1 + trial % 5;
    RMatrix a(n, n);
    RVector b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      b(i) = Rational(num(rng), den(rng));
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Rational(num(rng), den(rng));
    }
    const auto x = solve_exact_linear(a, b);
    if (exact_rank(a) == n) {
      REQUIRE(x);
      const RVector back = a * (*x);
      CHECK(back == b);
    }
  }
}

TEST_CASE("barycentric_vertex examples") {
  SUBCASE("symmetric pair") {
    const std::vector<IntPoint> pts{{1, 0}, {-1, 0}};
    const auto sol = barycentric_vertex(pts, {0, 0});
    REQUIRE(sol);
    CHECK(sol->support.size() == 2);
    CHECK(sol->coefficients[0] == Rational(1, 2));
    CHECK(sol->coefficients[1] == Rational(1, 2));
  }
  SUBCASE("cone of the figure-one measure misses the origin") {
    const std::vector<IntPoint> pts{{2, -1}, {-1, 2}, {4, -2}, {-2, 4}};
    CHECK_FALSE(barycentric_vertex(pts, {0, 0}));
  }
  SUBCASE("three vectors summing to zero") {
    const std::vector<IntPoint> pts{{2, -1}, {-1, 2}, {-1, -1}};
    const auto sol = barycentric_vertex(pts, {0, 0});
    REQUIRE(sol);
    REQUIRE(sol->coefficients.size() == 3);
    for (const auto& c : sol->coefficients) CHECK(c == Rational(1, 3));
  }
  SUBCASE("duplicates and target on a point") {
    const std::vector<IntPoint> pts{{1, 1}, {1, 1}, {0, 0}, {3, 3}};
    const auto sol = barycentric_vertex(pts, {0, 0});
    REQUIRE(sol);
    CHECK(sol->support == std::vector<std::size_t>{2});
    CHECK(sol->coefficients[0] == Rational(1));
  }
  SUBCASE("empty input is a contract error") {
    CHECK_THROWS_AS(barycentric_vertex({}, {0}), Error);
  }
}

TEST_CASE("barycentric_vertex agrees with lp_feasible and yields simplices") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coord(-4, 4);
  std::uniform_int_distribution<int> count(1, 9);
  int feasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 3);
    std::vector<IntPoint> pts(static_cast<std::size_t>(count(rng)), IntPoint(d));
    for (auto& p : pts)
      for (auto& c : p) c = coord(rng);
    const IntPoint target(d, 0);
    const auto sol = barycentric_vertex(pts, target);
    CHECK(sol.has_value() == hull_contains_by_lp(pts, target));
    if (sol) {
      ++feasible;
      check_solution(pts, target, *sol);
      CHECK(sol->support.size() <= d + 1);
    }
  }
  CHECK(feasible > 20);
}

TEST_CASE("lp_feasible examples") {
  SUBCASE("no constraints") {
    const auto r = lp_feasible(RMatrix(0, 2), RVector(0), RMatrix(0, 2), RVector(0), 2);
    CHECK(r.feasible);
    CHECK(r.witness == RVector::Zero(2));
  }
  SUBCASE("simplex constraint") {
    const auto r = lp_feasible(RMatrix(0, 2), RVector(0), rows_of({{1, 1}}), vec_of({Rational(1)}), 2);
    REQUIRE(r.feasible);
    CHECK(r.witness.sum() == Rational(1));
    CHECK(r.witness.minCoeff() >= Rational(0));
  }
  SUBCASE("negative equality") {
    const auto r = lp_feasible(RMatrix(0, 1), RVector(0), rows_of({{1}}), vec_of({Rational(-1)}), 1);
    CHECK_FALSE(r.feasible);
  }
  SUBCASE("inequalities with negative rhs") {
    // x1 + x2 <= 3, -x1 <= -2 (x1 >= 2), x2 = 2 -> infeasible; x2 = 1 -> feasible
    const RMatrix aub = rows_of({{1, 1}, {-1, 0}});
    const RVector bub = vec_of({Rational(3), Rational(-2)});
    CHECK_FALSE(lp_feasible(aub, bub, rows_of({{0, 1}}), vec_of({Rational(2)}), 2).feasible);
    const auto ok = lp_feasible(aub, bub, rows_of({{0, 1}}), vec_of({Rational(1)}), 2);
    REQUIRE(ok.feasible);
    CHECK(ok.witness(0) == Rational(2));
    CHECK(ok.witness(1) == Rational(1));
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(lp_feasible(RMatrix(0, 2), RVector(0), rows_of({{1, 1}}), RVector(0), 2), Error);
  }
}
