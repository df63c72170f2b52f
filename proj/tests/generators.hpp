#pragma once

// Seeded random instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <array>
#include <map>
#include <cstdint>
#include <numeric>
#include <string>
#include <random>
#include <vector>

#include "cycdec/complex.hpp"
#include "cycdec/exact_lp.hpp"
#include "cycdec/finite_graph.hpp"
#include "cycdec/lattice.hpp"
#include "cycdec/rational.hpp"

namespace cycdec::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// Random positive rational with denominator at most max_den.
inline Rational random_positive(Rng& rng, std::int64_t max_num, std::int64_t max_den) {
  return Rational(uniform_int(rng, 1, max_num), uniform_int(rng, 1, max_den));
}

inline IntPoint random_point(Rng& rng, std::size_t d, std::int64_t radius) {
  IntPoint x(d);
  for (auto& c : x) c = uniform_int(rng, -radius, radius);
  return x;
}

/// Mean-zero measure built from random closed displacement sequences.
inline LatticeMeasure random_balanced_measure(Rng& rng, std::size_t d, std::size_t max_support,
                                              std::int64_t radius = 4) {
  LatticeMeasure p(d);
  const auto loops = uniform_int(rng, 1, 5);
  for (std::int64_t l = 0; l < loops; ++l) {
    const auto k = uniform_int(rng, 1, 4);
    std::vector<IntPoint> steps;
    IntPoint sum(d, 0);
    for (std::int64_t i = 0; i < k; ++i) {
      steps.push_back(random_point(rng, d, radius));
      for (std::size_t c = 0; c < d; ++c) sum[c] += steps.back()[c];
    }
    for (auto& c : sum) c = -c;
    steps.push_back(sum);
    // skip loops that would push the support past the requested size
    std::size_t fresh = 0;
    for (const auto& w : steps) fresh += p.mass(w).is_zero() ? 1 : 0;
    if (p.atoms().size() + fresh > max_support) continue;
    const Rational w = random_positive(rng, 20, 100);
    for (const auto& s : steps) p.add(s, w / Rational(static_cast<long long>(steps.size())));
  }
  if (p.empty()) p.add(IntPoint(d, 0), Rational(1));
  return p;
}

/// Affinely independent points with the origin in the relative interior of
/// their hull, together with the integer weights used to close them.
inline std::vector<IntPoint> random_interior_simplex(Rng& rng, std::size_t d, std::int64_t radius = 5) {
  for (;;) {
    const auto k = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<std::int64_t>(d) + 1));
    std::vector<IntPoint> pts;
    IntPoint last(d, 0);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      pts.push_back(random_point(rng, d, radius));
      const auto a = uniform_int(rng, 1, 4);
      for (std::size_t c = 0; c < d; ++c) last[c] -= a * pts.back()[c];
    }
    pts.push_back(last);
    if (affinely_independent(pts)) return pts;
  }
}

inline std::vector<Vertex> vertex_labels(std::size_t n) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

/// Sum of weighted random simple cycles on at most `max_vertices` vertices,
/// every weight a multiple of 1/den.
inline WeightedDigraph random_cycle_sum(Rng& rng, std::size_t max_vertices, std::int64_t den) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 2, static_cast<std::int64_t>(max_vertices)));
  const auto labels = vertex_labels(n);
  WeightedDigraph g;
  const auto cycles = uniform_int(rng, 1, 8);
  for (std::int64_t c = 0; c < cycles; ++c) {
    std::vector<Vertex> order = labels;
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(static_cast<std::size_t>(uniform_int(rng, 2, static_cast<std::int64_t>(n))));
    const Rational w(uniform_int(rng, 1, 50), den);
    for (std::size_t i = 0; i < order.size(); ++i) g.add_weight(order[i], order[(i + 1) % order.size()], w);
  }
  return g;
}

/// Balanced graph whose edge weights have denominators at most max_den.
inline WeightedDigraph random_balanced_digraph(Rng& rng, std::size_t max_vertices, std::int64_t max_den = 100) {
  return random_cycle_sum(rng, max_vertices, uniform_int(rng, 1, max_den));
}

/// A balanced graph with one extra edge, which breaks balance at its ends.
inline WeightedDigraph random_unbalanced_digraph(Rng& rng, std::size_t max_vertices, std::int64_t max_den = 100) {
  const auto den = uniform_int(rng, 1, max_den);
  WeightedDigraph g = random_cycle_sum(rng, max_vertices, den);
  const std::vector<Vertex> vs(g.vertices().begin(), g.vertices().end());
  const auto u = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(vs.size()) - 1));
  auto v = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<std::int64_t>(vs.size()) - 2));
  if (v >= u) ++v;
  g.add_weight(vs[u], vs[v], Rational(uniform_int(rng, 1, 50), den));
  return g;
}

/// Balanced measure plus one extra atom away from the origin, so the mean is
/// nonzero.
inline LatticeMeasure random_unbalanced_measure(Rng& rng, std::size_t d, std::size_t max_support) {
  LatticeMeasure p = random_balanced_measure(rng, d, max_support - 1);
  IntPoint x;
  do {
    x = random_point(rng, d, 4);
  } while (std::all_of(x.begin(), x.end(), [](std::int64_t c) { return c == 0; }));
  p.add(x, random_positive(rng, 20, 100));
  return p;
}

/// Convex combination of at most `max_perms` random permutation matrices.
inline WeightedDigraph random_bistochastic(Rng& rng, std::size_t max_n, std::size_t max_perms) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_n)));
  const auto labels = vertex_labels(n);
  const auto k = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_perms)));
  std::vector<Rational> w;
  Rational total;
  for (std::size_t i = 0; i < k; ++i) {
    w.push_back(random_positive(rng, 20, 30));
    total += w.back();
  }
  WeightedDigraph g(true);
  for (const auto& v : labels) g.add_vertex(v);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (std::size_t r = 0; r < n; ++r) g.add_weight(labels[r], labels[perm[r]], w[i] / total);
  }
  return g;
}

/// Signed rational with |numerator| <= max_num and denominator <= max_den.
inline Rational random_rational(Rng& rng, std::int64_t max_num, std::int64_t max_den) {
  return Rational(uniform_int(rng, -max_num, max_num), uniform_int(rng, 1, max_den));
}

inline RVector random_vector(Rng& rng, Eigen::Index n, std::int64_t max_num = 9, std::int64_t max_den = 7) {
  RVector x(n);
  for (auto& v : x) v = random_rational(rng, max_num, max_den);
  return x;
}

/// Closed surface from vertex triples; each edge is stored from its lower to
/// its higher vertex index.
inline TwoComplex triangulated_surface(int vertices, const std::vector<std::array<int, 3>>& triangles, bool orientable) {
  std::vector<std::string> names;
  for (int v = 0; v < vertices; ++v) names.push_back("p" + std::to_string(v));
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  std::map<std::pair<int, int>, Eigen::Index> index;
  std::vector<std::vector<SignedEdge>> faces;
  for (const auto& t : triangles) {
    std::vector<SignedEdge> sides;
    for (int k = 0; k < 3; ++k) {
      const int a = t[static_cast<std::size_t>(k)];
      const int b = t[static_cast<std::size_t>((k + 1) % 3)];
      const std::pair<int, int> key{std::min(a, b), std::max(a, b)};
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, static_cast<Eigen::Index>(edges.size())).first;
        edges.emplace_back(key.first, key.second);
      }
      sides.push_back({it->second, a < b ? 1 : -1});
    }
    faces.push_back(std::move(sides));
  }
  return TwoComplex::surface(std::move(names), std::move(edges), std::move(faces), orientable);
}

inline TwoComplex tetrahedron() {
  return triangulated_surface(4, {{0, 2, 1}, {0, 1, 3}, {0, 3, 2}, {1, 2, 3}}, true);
}

/// Six-vertex projective plane.
inline TwoComplex projective_plane() {
  return triangulated_surface(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                  {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}}, false);
}

/// n x n square grid glued like the torus horizontally and with a flip
/// vertically: (i, n) is identified with (-i, 0).
inline TwoComplex klein_bottle(int n) {
  auto vid = [n](int i, int j) { return static_cast<Eigen::Index>(((i % n) + n) % n + n * j); };
  std::vector<std::string> names;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i) + "," + std::to_string(j));
  }
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  auto h = [n](int i, int j) { return static_cast<Eigen::Index>(2 * (((i % n) + n) % n + n * j)); };
  auto v = [n](int i, int j) { return static_cast<Eigen::Index>(2 * (((i % n) + n) % n + n * j) + 1); };
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      edges.emplace_back(vid(i, j), vid(i + 1, j));
      edges.emplace_back(vid(i, j), j + 1 < n ? vid(i, j + 1) : vid(-i, 0));
    }
  }
  std::vector<std::vector<SignedEdge>> faces;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // the top side of the last row runs along h(-i-1, 0) forwards
      const SignedEdge top = j + 1 < n ? SignedEdge{h(i, j + 1), -1} : SignedEdge{h(-i - 1, 0), 1};
      faces.push_back({{h(i, j), 1}, {v(i + 1, j), 1}, top, {v(i, j), -1}});
    }
  }
  return TwoComplex::surface(std::move(names), std::move(edges), std::move(faces), false);
}


/// Faces of the two-dimensional torus whose lower-left column lies in [lo, hi).
inline TwoChain band_chain(const TwoComplex& c, Eigen::Index lo, Eigen::Index hi) {
  TwoChain psi = TwoChain::Zero(c.face_count());
  for (Eigen::Index j = 0; j < c.torus_shape()->n2; ++j) {
    for (Eigen::Index i = lo; i < hi; ++i) psi(c.face_at(i, j)) = Rational(1);
  }
  return psi;
}

/// Unit flow up column hi and down column lo: the boundary of band_chain.
inline VectorField two_column_field(const TwoComplex& c, Eigen::Index lo, Eigen::Index hi) {
  VectorField phi = VectorField::Zero(c.edge_count());
  for (Eigen::Index j = 0; j < c.torus_shape()->n2; ++j) {
    phi(c.vertical_edge(hi, j)) = Rational(1);
    phi(c.vertical_edge(lo, j)) = Rational(-1);
  }
  return phi;
}

/// r^phi + s with phi a random boundary and s mixing zero and positive values.
inline EdgeRates random_boundary_rates(Rng& rng, const TwoComplex& c, std::int64_t max_psi = 3) {
  TwoChain psi(c.face_count());
  for (auto& v : psi) v = random_rational(rng, max_psi, 2);
  RVector s(c.edge_count());
  for (auto& v : s) v = uniform_int(rng, 0, 2) == 0 ? Rational(0) : random_positive(rng, 3, 2);
  return field_to_rates(boundary2(c, psi)) + symmetric_rates(s);
}

}  // namespace cycdec::testing
