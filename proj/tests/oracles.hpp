#pragma once

// Slow reference checks kept out of the library.

#include <vector>

#include "cycdec/elementary.hpp"

namespace cycdec::testing {

/// d(I, J) between two closed intervals.
inline Rational interval_distance(const EdgeSet& a, const EdgeSet& b) {
  return max(Rational(0), max(Rational(b.lo - a.hi), Rational(a.lo - b.hi)));
}

/// Pairwise form of the interval test: s_i + s_j >= d(I_i, I_j) for all pairs.
inline bool pairwise_interval_test(const std::vector<EdgeSet>& intervals, const RVector& s) {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    for (std::size_t j = i + 1; j < intervals.size(); ++j) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      if (s(a) + s(b) < interval_distance(intervals[i], intervals[j])) return false;
    }
  }
  return true;
}

inline RVector symmetric_weights(const EdgeRates& r) {
  RVector s(r.forward.size());
  for (Eigen::Index e = 0; e < s.size(); ++e) s(e) = min(r.forward(e), r.backward(e));
  return s;
}

}  // namespace cycdec::testing
