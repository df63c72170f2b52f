#pragma once

// Decompositions into elementary cycles (one back-and-forth edge cycle per
// edge, one boundary cycle per oriented face): membership test through the
// interval intersection, explicit construction, the non-orientable variant,
// the one-dimensional family, a spanning-tree sufficient bound, and an LP
// oracle.

#include <optional>
#include <string>
#include <vector>

#include "cycdec/complex.hpp"
#include "cycdec/finite_graph.hpp"
#include "cycdec/lattice.hpp"
#include "cycdec/rational.hpp"

namespace cycdec {

/// Either the closed interval [lo, hi] or, when `complement` is set, the
/// closed set (-inf, lo] u [hi, +inf).
struct EdgeSet {
  Rational lo, hi;
  bool complement = false;

  Rational distance_to_zero() const;
};

/// d(0, c + I) for I = [lo, hi]; zero when the shifted interval contains 0.
Rational shifted_distance(const EdgeSet& interval, const Rational& c);

/// One set per edge from the face values on its two sides. Orientable
/// complexes always give intervals. On non-orientable ones an edge run in
/// the same direction by both faces gets the complement set.
std::vector<EdgeSet> edge_intervals(const TwoComplex& c, const TwoChain& psi);

struct ReVerdict {
  bool yes = false;
  std::string reason;            // "NotHomologous", "PolyhedronViolated", "EdgeViolated"; empty on yes
  std::optional<Rational> witness_c;
  std::optional<Rational> c_lo, c_hi;  // feasible shifts (orientable yes-instances)
  std::vector<Eigen::Index> violating_edges;
  TwoChain psi;                  // recovered potential when phi bounds
};

/// Orientable complexes: phi^r must bound some psi, and the shifted intervals
/// [-i2 - s, -i1 + s] must share a point (running max/min in one pass). The
/// default witness is the midpoint of the common part. A no-answer caused by
/// the intervals names an edge pair with s + s' < d(I, I'). Non-orientable
/// complexes are forwarded to in_Re_nonorientable.
ReVerdict in_Re(const TwoComplex& c, const EdgeRates& r);

/// s(e) >= d(0, J(e)) for every edge, with psi the unique solution of
/// d psi = phi^r. Violations list the failing edges.
ReVerdict in_Re_nonorientable(const TwoComplex& c, const EdgeRates& r);

struct ElementaryDecomposition {
  RVector edge_weights;   // back-and-forth cycle on each edge
  RVector face_weights;   // boundary cycle of each face, in its own orientation
  RVector reverse_weights;  // the same cycle run backwards
  Rational shift;         // constant added to psi (always 0 when non-orientable)
  TwoChain psi;
};

/// Face weights [psi + c]_+ and [-psi - c]_+, edge weights s - d(0, c + I).
/// Throws NotInRe when r has no elementary decomposition and
/// NegativeEdgeWeight when an explicit shift lies outside the feasible range.
ElementaryDecomposition elementary_decompose(const TwoComplex& c, const EdgeRates& r,
                                             std::optional<Rational> shift = std::nullopt);

EdgeRates reconstruct(const TwoComplex& c, const ElementaryDecomposition& dec);

/// The same decomposition as weighted vertex cycles (zero weights dropped).
GraphDecomposition to_graph_decomposition(const TwoComplex& c, const ElementaryDecomposition& dec);
/// Rates as a digraph on the vertex names.
WeightedDigraph rates_digraph(const TwoComplex& c, const EdgeRates& r);

/// Each nonzero elementary class once, valid for every period translate.
std::vector<PeriodicRecord> periodic_lift(const TwoComplex& c, const ElementaryDecomposition& dec);

// One-dimensional torus.
struct CycleDecomposition1D {
  RVector edge_weights;
  Rational plus;   // the loop 0 -> 1 -> ... -> N-1 -> 0
  Rational minus;  // the loop run backwards
};

class Family1D {
 public:
  Family1D(RVector s, Rational flow) : s_(std::move(s)), flow_(std::move(flow)) {}

  /// The constant value of phi^r.
  const Rational& flow() const { return flow_; }
  /// Largest admissible parameter: the least symmetric weight.
  Rational m() const;
  /// Homotopically trivial decomposition exists exactly when the flow is 0.
  bool in_R_star() const { return flow_.is_zero(); }
  /// Throws NegativeEdgeWeight unless 0 <= a <= m().
  CycleDecomposition1D at(const Rational& a) const;

 private:
  RVector s_;
  Rational flow_;
};

/// Throws NotBalanced when phi^r is not constant along the cycle.
Family1D decompose_1d(const TwoComplex& c, const EdgeRates& r);
EdgeRates reconstruct_1d(const TwoComplex& c, const CycleDecomposition1D& dec);

struct DiameterBound {
  bool sufficient = false;
  Rational m_bound;  // weight of a minimum spanning tree of the dual graph
};

/// Orientable complexes only. Throws NotHomologous when phi^r does not bound.
DiameterBound sufficient_diameter_bound(const TwoComplex& c, const EdgeRates& r);

inline constexpr Eigen::Index kOracleVariableBudget = 400;

/// Exact LP feasibility of a nonnegative elementary decomposition. Throws
/// TooLarge above the variable budget.
bool brute_force_Re_oracle(const TwoComplex& c, const EdgeRates& r, Eigen::Index budget = kOracleVariableBudget);

}  // namespace cycdec
