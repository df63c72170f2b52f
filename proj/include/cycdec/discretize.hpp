#pragma once

// Smooth stream functions on the torus turned into exact boundary fields,
// and the periodic random environment built on top of them.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "cycdec/complex.hpp"
#include "cycdec/elementary.hpp"
#include "cycdec/rational.hpp"

namespace cycdec {

inline constexpr long kSnapDenominator = 1'000'000;

/// A stream function psi on the plane, periodic with the given periods.
/// Samples are snapped to multiples of 1/denominator.
struct PotentialSampler {
  std::function<double(double, double)> psi;
  double period1 = 1.0;
  double period2 = 1.0;
  long denominator = kSnapDenominator;

  /// Snapped psi at the centre of face (i, j) of an n1 x n2 grid over one period.
  Rational face_value(Eigen::Index i, Eigen::Index j, Eigen::Index n1, Eigen::Index n2) const;
};

/// Named stream functions on the unit square, rescaled to `periods`:
///   zero | constant:C | sine[:A] (A sin 2pi u1 sin 2pi u2)
///   band:LO:HI[:H] (H for LO <= u1 < HI) | wave:K1:K2[:A] (A sin 2pi (K1 u1 + K2 u2))
/// Throws Parse on anything else.
PotentialSampler named_potential(const std::string& spec, double period1 = 1.0, double period2 = 1.0);

/// psi_N: the snapped face-centre samples on the torus (shifted by whole faces).
TwoChain sample_faces(const PotentialSampler& p, const TwoComplex& torus, Eigen::Index shift1 = 0,
                      Eigen::Index shift2 = 0);

/// Fluxes of the orthogonal gradient across the dual segments, as exact
/// differences of face samples. The result is boundary2(sample_faces(...)).
VectorField discretize_potential(const PotentialSampler& p, const TwoComplex& torus, Eigen::Index shift1 = 0,
                                 Eigen::Index shift2 = 0);
VectorField discretize_potential(const PotentialSampler& p, Eigen::Index n);

/// max - min over the face-centre samples (the grid oscillation).
Rational oscillation_bound(const PotentialSampler& p, Eigen::Index n1, Eigen::Index n2);
Rational oscillation_bound(const PotentialSampler& p, Eigen::Index n);

/// s_min >= M / 2.
bool check_re_sufficient(const PotentialSampler& p, Eigen::Index n, const Rational& s_min);

struct EnvironmentSpec {
  PotentialSampler potential;
  Rational a, b;  // noise range, 0 < a <= b
  std::uint64_t seed = 0;
  Eigen::Index n1 = 0, n2 = 0;
  bool random_shift = true;
};

struct Environment {
  TwoComplex torus;
  Eigen::Index shift1 = 0, shift2 = 0;
  VectorField phi;
  RVector noise;        // one draw per edge, used in both directions
  EdgeRates weights;    // r^phi + noise, before normalization
  std::vector<std::array<Rational, 4>> probabilities;  // right, up, left, down
  Rational oscillation;
  bool sufficient = false;  // a >= oscillation / 2
  ReVerdict certificate;    // in_Re on the unnormalized weights
};

/// Deterministic in the spec: a mt19937_64 seeded with `seed` draws the grid
/// shift first, then noise numerators k uniform in [ceil(aD), floor(bD)] edge
/// by edge (U = k / D; U = a when a == b). Throws Contract on a bad spec.
Environment random_environment(const EnvironmentSpec& spec);

/// "x1 x2 : p_right p_up p_left p_down" per vertex, then the certificate as
/// '#' comment records.
void write_environment(std::ostream& out, const Environment& env, int decimals = -1);

}  // namespace cycdec
