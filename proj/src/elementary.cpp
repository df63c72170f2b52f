#include "cycdec/elementary.hpp"

#include <algorithm>
#include <numeric>

#include "cycdec/error.hpp"
#include "cycdec/exact_lp.hpp"

namespace cycdec {

namespace {

RVector symmetric_weights(const EdgeRates& r) {
  RVector s(r.forward.size());
  for (Eigen::Index e = 0; e < s.size(); ++e) s(e) = min(r.forward(e), r.backward(e));
  return s;
}

bool all_zero(const RVector& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v.is_zero(); });
}

void require_rates(const TwoComplex& c, const EdgeRates& r) {
  if (r.forward.size() != c.edge_count() || r.backward.size() != c.edge_count()) {
    throw Error(ErrorCode::Contract, "rates do not match the complex");
  }
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    if (r.forward(e).sign() < 0 || r.backward(e).sign() < 0) {
      throw Error(ErrorCode::Contract, "negative rate on edge " + c.edge_key(e));
    }
  }
}

ReVerdict not_homologous() {
  ReVerdict v;
  v.reason = "NotHomologous";
  return v;
}

}  // namespace

Rational EdgeSet::distance_to_zero() const {
  if (!complement) return shifted_distance(*this, Rational(0));
  if (lo.sign() < 0 && hi.sign() > 0) return min(Rational(-lo), hi);
  return Rational(0);
}

Rational shifted_distance(const EdgeSet& interval, const Rational& c) {
  const Rational lo = interval.lo + c;
  const Rational hi = interval.hi + c;
  if (lo.sign() > 0) return lo;
  if (hi.sign() < 0) return -hi;
  return Rational(0);
}

std::vector<EdgeSet> edge_intervals(const TwoComplex& c, const TwoChain& psi) {
  if (psi.size() != c.face_count()) throw Error(ErrorCode::Contract, "2-chain does not match the complex");
  std::vector<EdgeSet> out;
  out.reserve(static_cast<std::size_t>(c.edge_count()));
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    const auto& inc = c.incidences(e);
    if (inc.size() != 2) throw Error(ErrorCode::Contract, "edge " + c.edge_key(e) + " is not on two faces");
    const Rational& a = psi(inc[0].face);
    const Rational& b = psi(inc[1].face);
    out.push_back({min(a, b), max(a, b), inc[0].sign == inc[1].sign});
  }
  return out;
}

ReVerdict in_Re(const TwoComplex& c, const EdgeRates& r) {
  require_rates(c, r);
  if (!c.orientable()) return in_Re_nonorientable(c, r);
  const VectorField phi = rates_to_field(r);
  if (c.face_count() == 0) {
    if (!all_zero(phi)) return not_homologous();
    ReVerdict v;
    v.yes = true;
    v.witness_c = v.c_lo = v.c_hi = Rational(0);
    v.psi = TwoChain(0);
    return v;
  }
  if (!in_d_lambda2(c, phi)) return not_homologous();

  ReVerdict v;
  v.psi = recover_psi(c, phi, 0);
  const RVector s = symmetric_weights(r);
  const auto intervals = edge_intervals(c, v.psi);
  // c is feasible iff -i2(e) - s(e) <= c <= -i1(e) + s(e) for every edge
  Eigen::Index arg_lo = 0;
  Eigen::Index arg_hi = 0;
  Rational lo = -intervals[0].hi - s(0);
  Rational hi = -intervals[0].lo + s(0);
  for (Eigen::Index e = 1; e < c.edge_count(); ++e) {
    const auto& I = intervals[static_cast<std::size_t>(e)];
    Rational l = -I.hi - s(e);
    Rational h = -I.lo + s(e);
    if (l > lo) {
      lo = std::move(l);
      arg_lo = e;
    }
    if (h < hi) {
      hi = std::move(h);
      arg_hi = e;
    }
  }
  if (lo <= hi) {
    v.yes = true;
    v.witness_c = (lo + hi) / Rational(2);
    v.c_lo = std::move(lo);
    v.c_hi = std::move(hi);
  } else {
    v.reason = "PolyhedronViolated";
    v.violating_edges = {arg_lo, arg_hi};
  }
  return v;
}

ReVerdict in_Re_nonorientable(const TwoComplex& c, const EdgeRates& r) {
  require_rates(c, r);
  if (c.orientable()) throw Error(ErrorCode::Contract, "in_Re_nonorientable on an orientable complex");
  const VectorField phi = rates_to_field(r);
  ReVerdict v;
  try {
    v.psi = recover_psi(c, phi);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotHomologous) throw;
    return not_homologous();
  }
  const RVector s = symmetric_weights(r);
  const auto sets = edge_intervals(c, v.psi);
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    if (s(e) < sets[static_cast<std::size_t>(e)].distance_to_zero()) v.violating_edges.push_back(e);
  }
  v.yes = v.violating_edges.empty();
  if (v.yes) {
    v.witness_c = Rational(0);
  } else {
    v.reason = "EdgeViolated";
  }
  return v;
}

ElementaryDecomposition elementary_decompose(const TwoComplex& c, const EdgeRates& r, std::optional<Rational> shift) {
  const ReVerdict verdict = in_Re(c, r);
  if (!verdict.yes) throw Error(ErrorCode::NotInRe, "no elementary decomposition (" + verdict.reason + ")");
  if (!c.orientable() && shift && !shift->is_zero()) {
    throw Error(ErrorCode::Contract, "a non-orientable complex admits no constant shift");
  }
  ElementaryDecomposition dec;
  dec.shift = shift ? *shift : *verdict.witness_c;
  dec.psi = verdict.psi;
  const RVector s = symmetric_weights(r);
  dec.face_weights = RVector(c.face_count());
  dec.reverse_weights = RVector(c.face_count());
  for (Eigen::Index f = 0; f < c.face_count(); ++f) {
    const Rational v = dec.psi(f) + dec.shift;
    dec.face_weights(f) = positive_part(v);
    dec.reverse_weights(f) = positive_part(Rational(-v));
  }
  dec.edge_weights = RVector(c.edge_count());
  if (c.face_count() == 0) {
    dec.edge_weights = s;
  } else {
    const auto sets = edge_intervals(c, dec.psi);
    for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
      const auto& set = sets[static_cast<std::size_t>(e)];
      dec.edge_weights(e) = s(e) - (set.complement ? set.distance_to_zero() : shifted_distance(set, dec.shift));
      if (dec.edge_weights(e).sign() < 0) {
        throw Error(ErrorCode::NegativeEdgeWeight, "shift " + dec.shift.fraction() + " leaves a negative weight on edge " +
                                                       c.edge_key(e));
      }
    }
  }
  if (reconstruct(c, dec) != r) throw Error(ErrorCode::Contract, "elementary decomposition does not reproduce the rates");
  return dec;
}

EdgeRates reconstruct(const TwoComplex& c, const ElementaryDecomposition& dec) {
  EdgeRates r{dec.edge_weights, dec.edge_weights};
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    for (const auto& inc : c.incidences(e)) {
      const Rational& along = inc.sign > 0 ? dec.face_weights(inc.face) : dec.reverse_weights(inc.face);
      const Rational& against = inc.sign > 0 ? dec.reverse_weights(inc.face) : dec.face_weights(inc.face);
      r.forward(e) += along;
      r.backward(e) += against;
    }
  }
  return r;
}

namespace {

std::vector<Vertex> face_walk(const TwoComplex& c, Eigen::Index f) {
  std::vector<Vertex> walk;
  for (const auto& side : c.face(f)) walk.push_back(c.vertex_name(side.sign > 0 ? c.tail(side.edge) : c.head(side.edge)));
  return walk;
}

}  // namespace

GraphDecomposition to_graph_decomposition(const TwoComplex& c, const ElementaryDecomposition& dec) {
  GraphDecomposition out;
  out.name = "elementary";
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    if (dec.edge_weights(e).sign() > 0) {
      out.terms.push_back({GraphCycle({c.vertex_name(c.tail(e)), c.vertex_name(c.head(e))}), dec.edge_weights(e)});
    }
  }
  for (Eigen::Index f = 0; f < c.face_count(); ++f) {
    auto walk = face_walk(c, f);
    if (dec.face_weights(f).sign() > 0) out.terms.push_back({GraphCycle(walk), dec.face_weights(f)});
    if (dec.reverse_weights(f).sign() > 0) {
      std::reverse(walk.begin(), walk.end());
      out.terms.push_back({GraphCycle(walk), dec.reverse_weights(f)});
    }
  }
  return out;
}

WeightedDigraph rates_digraph(const TwoComplex& c, const EdgeRates& r) {
  WeightedDigraph g;
  for (Eigen::Index v = 0; v < c.vertex_count(); ++v) g.add_vertex(c.vertex_name(v));
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    g.add_weight(c.vertex_name(c.tail(e)), c.vertex_name(c.head(e)), r.forward(e));
    g.add_weight(c.vertex_name(c.head(e)), c.vertex_name(c.tail(e)), r.backward(e));
  }
  return g;
}

std::vector<PeriodicRecord> periodic_lift(const TwoComplex& c, const ElementaryDecomposition& dec) {
  if (!c.torus_shape()) throw Error(ErrorCode::Contract, "periodic lift needs a torus");
  std::vector<PeriodicRecord> out;
  const std::string scope = "all period translates";
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    if (dec.edge_weights(e).sign() > 0) out.push_back({"edge " + c.edge_key(e), dec.edge_weights(e), scope});
  }
  for (Eigen::Index f = 0; f < c.face_count(); ++f) {
    if (dec.face_weights(f).sign() > 0) out.push_back({"face " + c.face_key(f) + " +", dec.face_weights(f), scope});
    if (dec.reverse_weights(f).sign() > 0) out.push_back({"face " + c.face_key(f) + " -", dec.reverse_weights(f), scope});
  }
  return out;
}

// --- one-dimensional torus ----------------------------------------------------------

Rational Family1D::m() const { return *std::min_element(s_.begin(), s_.end()); }

CycleDecomposition1D Family1D::at(const Rational& a) const {
  if (a.sign() < 0 || a > m()) {
    throw Error(ErrorCode::NegativeEdgeWeight, "parameter " + a.fraction() + " outside [0, " + m().fraction() + "]");
  }
  CycleDecomposition1D out;
  out.edge_weights = s_ - RVector::Constant(s_.size(), a);
  out.plus = positive_part(flow_) + a;
  out.minus = positive_part(Rational(-flow_)) + a;
  return out;
}

Family1D decompose_1d(const TwoComplex& c, const EdgeRates& r) {
  if (!c.torus_shape() || c.torus_shape()->dimension != 1) throw Error(ErrorCode::Contract, "decompose_1d needs a cycle");
  require_rates(c, r);
  const VectorField phi = rates_to_field(r);
  for (Eigen::Index e = 1; e < phi.size(); ++e) {
    if (phi(e) != phi(0)) {
      throw Error(ErrorCode::NotBalanced, "flow changes between edges " + std::to_string(e - 1) + " and " +
                                              std::to_string(e) + ", so the divergence is nonzero there");
    }
  }
  return Family1D(symmetric_weights(r), phi(0));
}

EdgeRates reconstruct_1d(const TwoComplex& c, const CycleDecomposition1D& dec) {
  if (dec.edge_weights.size() != c.edge_count()) throw Error(ErrorCode::Contract, "decomposition does not match the cycle");
  return {dec.edge_weights + RVector::Constant(c.edge_count(), dec.plus),
          dec.edge_weights + RVector::Constant(c.edge_count(), dec.minus)};
}

// --- sufficient bound ---------------------------------------------------------------

DiameterBound sufficient_diameter_bound(const TwoComplex& c, const EdgeRates& r) {
  require_rates(c, r);
  if (!c.orientable()) throw Error(ErrorCode::Contract, "the dual-tree bound needs an orientable complex");
  const VectorField phi = rates_to_field(r);
  if (!in_d_lambda2(c, phi)) throw Error(ErrorCode::NotHomologous, "phi is not a boundary");
  DiameterBound out;
  if (c.face_count() > 0) {
    // Kruskal on the dual graph weighted by |phi|
    std::vector<Eigen::Index> order(static_cast<std::size_t>(c.edge_count()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return abs(phi(a)) < abs(phi(b)); });
    std::vector<Eigen::Index> parent(static_cast<std::size_t>(c.face_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Eigen::Index x) {
      while (parent[static_cast<std::size_t>(x)] != x) {
        parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        x = parent[static_cast<std::size_t>(x)];
      }
      return x;
    };
    for (Eigen::Index e : order) {
      const Eigen::Index a = find(c.face_plus(e));
      const Eigen::Index b = find(c.face_minus(e));
      if (a == b) continue;
      parent[static_cast<std::size_t>(a)] = b;
      out.m_bound += abs(phi(e));
    }
  }
  const Rational half = out.m_bound / Rational(2);
  const RVector s = symmetric_weights(r);
  out.sufficient = std::all_of(s.begin(), s.end(), [&](const Rational& x) { return x >= half; });
  return out;
}

bool brute_force_Re_oracle(const TwoComplex& c, const EdgeRates& r, Eigen::Index budget) {
  require_rates(c, r);
  const Eigen::Index ne = c.edge_count();
  const Eigen::Index nf = c.face_count();
  const Eigen::Index n = ne + 2 * nf;
  if (n > budget) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " LP variables exceed the budget of " + std::to_string(budget));
  }
  // variables: edge cycles, face cycles, reversed face cycles
  RMatrix a = RMatrix::Zero(2 * ne, n);
  RVector b(2 * ne);
  for (Eigen::Index e = 0; e < ne; ++e) {
    a(e, e) = Rational(1);
    a(ne + e, e) = Rational(1);
    for (const auto& inc : c.incidences(e)) {
      a(e, inc.sign > 0 ? ne + inc.face : ne + nf + inc.face) += Rational(1);
      a(ne + e, inc.sign > 0 ? ne + nf + inc.face : ne + inc.face) += Rational(1);
    }
    b(e) = r.forward(e);
    b(ne + e) = r.backward(e);
  }
  return lp_feasible(RMatrix(0, n), RVector(0), a, b, n).feasible;
}

}  // namespace cycdec
