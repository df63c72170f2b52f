#pragma once

// Translation-invariant jump measures on Z^d: balance test, Carathéodory
// cycle extraction, irreducible cycle classes, and the one-dimensional
// heavy-tail stream.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cycdec/exact_lp.hpp"
#include "cycdec/rational.hpp"

namespace cycdec {

/// Finite-support nonnegative measure on Z^d. Only strictly positive atoms
/// are stored.
class LatticeMeasure {
 public:
  explicit LatticeMeasure(std::size_t dimension);

  /// Builds a measure from atoms; zero masses are dropped, negative masses,
  /// wrong dimensions and repeated points are contract errors.
  static LatticeMeasure from_atoms(std::size_t dimension, const std::vector<std::pair<IntPoint, Rational>>& atoms);
  static LatticeMeasure dirac(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  const std::map<IntPoint, Rational>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  Rational mass(const IntPoint& x) const;
  Rational total_mass() const;
  bool is_probability() const { return total_mass() == Rational(1); }
  bool is_subprobability() const { return total_mass() <= Rational(1); }

  /// Adds `delta` at x; the result must stay nonnegative. Zero atoms vanish.
  void add(const IntPoint& x, const Rational& delta);

  /// Support without the origin.
  std::vector<IntPoint> jump_support() const;

  friend bool operator==(const LatticeMeasure&, const LatticeMeasure&) = default;

 private:
  std::size_t dimension_;
  std::map<IntPoint, Rational> atoms_;
};

/// Multiset of displacement vectors {(w_i, n_i)} with sum n_i w_i = 0.
struct LatticeCycleClass {
  std::map<IntPoint, std::int64_t> entries;

  std::int64_t length() const;  // sum of multiplicities
  std::vector<IntPoint> vectors() const;
  bool closes() const;  // sum n_i w_i == 0
  std::string str() const;

  friend bool operator==(const LatticeCycleClass&, const LatticeCycleClass&) = default;
};

struct LatticeTerm {
  LatticeCycleClass cycle;
  Rational weight;
};

struct LatticeDecomposition {
  std::size_t dimension = 0;
  std::vector<LatticeTerm> terms;
  Rational trivial_mass;  // weight of the one-point cycle, i.e. of delta_0

  /// sum weight * empirical_measure(class) + trivial_mass * delta_0
  LatticeMeasure reconstruct() const;
};

LatticeMeasure empirical_measure(const LatticeCycleClass& cycle);

RVector mean(const LatticeMeasure& p);

/// Finite support implies integrability, so balance reduces to a zero mean.
bool is_balanced(const LatticeMeasure& p);

/// Multiplicities n_i = lcm(denominators) * mu_i from the unique barycentric
/// coordinates of the origin. Throws NotGeneralPosition / ZeroNotInterior.
LatticeCycleClass irreducible_class(const std::vector<IntPoint>& points);

inline constexpr std::int64_t kIrreducibleSearchBound = 24;

/// No proper nonempty sub-multiset sums to zero. Meet-in-the-middle over the
/// multiplicity vectors; throws TooLarge when length() exceeds `bound`.
bool is_irreducible(const LatticeCycleClass& cycle, std::int64_t bound = kIrreducibleSearchBound);

struct CaratheodoryStep {
  LatticeCycleClass cycle;
  Rational weight;
  LatticeMeasure residual;
};

/// One extraction: a simplex of the jump support containing the origin in its
/// relative interior, its irreducible class q, and the largest m with
/// m q <= p. Throws NotBalanced, or Contract when p has no jumps.
CaratheodoryStep caratheodory_step(const LatticeMeasure& p);

/// Throws NotBalanced when the mean is nonzero.
LatticeDecomposition decompose_lattice(const LatticeMeasure& p);

/// Mass function of a one-dimensional measure with infinite first moment on
/// both sides, queried pointwise.
struct HeavyTailOracle1D {
  std::function<Rational(std::int64_t)> mass_at;
  /// Largest |x| inspected when looking for the next positive atom.
  std::int64_t search_limit = std::int64_t{1} << 20;
};

struct HeavyTailStep {
  std::int64_t x_plus = 0;
  std::int64_t x_minus = 0;
  bool case_a = true;  // p(x+) x+ + p(x-) x- >= 0
  LatticeCycleClass cycle;
  Rational weight;
};

/// Streams the two-vector classes of the one-dimensional procedure. The origin
/// atom is never touched.
class HeavyTailStream {
 public:
  explicit HeavyTailStream(HeavyTailOracle1D oracle);

  /// Throws OracleExhausted when one side has no positive residual mass
  /// within the search limit.
  const HeavyTailStep& next();

  Rational residual(std::int64_t x) const;
  /// Mass already represented by emitted classes at x.
  Rational emitted(std::int64_t x) const;
  const std::vector<HeavyTailStep>& steps() const { return steps_; }

 private:
  HeavyTailOracle1D oracle_;
  std::map<std::int64_t, Rational> emitted_;
  std::vector<HeavyTailStep> steps_;
  std::int64_t scan_plus_ = 1;
  std::int64_t scan_minus_ = -1;
};

std::vector<HeavyTailStep> decompose_1d_heavy_tail(const HeavyTailOracle1D& oracle, int steps);

/// One periodic family of cycles on the infinite lattice: the class together
/// with every translate, all carrying the same weight.
struct PeriodicRecord {
  std::string cycle;
  Rational weight;
  std::string scope = "all translates";
};

std::vector<PeriodicRecord> periodic_lift(const LatticeDecomposition& dec);

// Text formats.
LatticeMeasure read_measure(std::istream& in, std::string_view source = "<measure>");
void write_measure(std::ostream& out, const LatticeMeasure& p, int decimals = -1);
void write_decomposition(std::ostream& out, const LatticeDecomposition& dec, int decimals = -1);
LatticeDecomposition read_lattice_decomposition(std::istream& in, std::string_view source = "<decomposition>");

}  // namespace cycdec
