#include "cycdec/complex.hpp"

#include <map>
#include <queue>
#include <set>

#include "cycdec/error.hpp"
#include "cycdec/linalg.hpp"

namespace cycdec {

namespace {

Eigen::Index wrap(Eigen::Index i, Eigen::Index n) { return ((i % n) + n) % n; }

void require_size(const RVector& x, Eigen::Index n, const char* what) {
  if (x.size() != n) {
    throw Error(ErrorCode::Contract, std::string(what) + " has " + std::to_string(x.size()) + " entries, expected " +
                                         std::to_string(n));
  }
}

}  // namespace

TwoComplex TwoComplex::torus(Eigen::Index n1, Eigen::Index n2) {
  if (n1 < 3 || n2 < 3) throw Error(ErrorCode::Contract, "torus sides must be at least 3");
  TwoComplex c;
  c.torus_ = TorusShape{2, n1, n2};
  for (Eigen::Index j = 0; j < n2; ++j) {
    for (Eigen::Index i = 0; i < n1; ++i) c.vertex_names_.push_back(std::to_string(i) + "," + std::to_string(j));
  }
  for (Eigen::Index j = 0; j < n2; ++j) {
    for (Eigen::Index i = 0; i < n1; ++i) {
      const Eigen::Index v = c.vertex_at(i, j);
      c.edges_.emplace_back(v, c.vertex_at(i + 1, j));
      c.edges_.emplace_back(v, c.vertex_at(i, j + 1));
    }
  }
  for (Eigen::Index j = 0; j < n2; ++j) {
    for (Eigen::Index i = 0; i < n1; ++i) {
      c.faces_.push_back({{c.horizontal_edge(i, j), 1},
                          {c.vertical_edge(i + 1, j), 1},
                          {c.horizontal_edge(i, j + 1), -1},
                          {c.vertical_edge(i, j), -1}});
    }
  }
  c.build_incidences();
  return c;
}

TwoComplex TwoComplex::cycle(Eigen::Index n) {
  if (n < 3) throw Error(ErrorCode::Contract, "cycle length must be at least 3");
  TwoComplex c;
  c.torus_ = TorusShape{1, n, 1};
  for (Eigen::Index x = 0; x < n; ++x) {
    c.vertex_names_.push_back(std::to_string(x));
    c.edges_.emplace_back(x, wrap(x + 1, n));
  }
  c.build_incidences();
  return c;
}

TwoComplex TwoComplex::surface(std::vector<std::string> vertex_names,
                               std::vector<std::pair<Eigen::Index, Eigen::Index>> edges,
                               std::vector<std::vector<SignedEdge>> faces, bool orientable) {
  auto invalid = [](const std::string& msg) { return Error(ErrorCode::InvalidComplex, msg); };
  const auto nv = static_cast<Eigen::Index>(vertex_names.size());
  if (std::set<std::string>(vertex_names.begin(), vertex_names.end()).size() != vertex_names.size()) {
    throw invalid("repeated vertex name");
  }
  std::set<std::pair<Eigen::Index, Eigen::Index>> pairs;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u < 0 || v < 0 || u >= nv || v >= nv) throw invalid("edge " + std::to_string(e) + " has an unknown endpoint");
    if (u == v) throw invalid("edge " + std::to_string(e) + " is a loop");
    if (!pairs.insert({std::min(u, v), std::max(u, v)}).second) {
      throw invalid("edge " + std::to_string(e) + " repeats a vertex pair");
    }
  }
  if (faces.empty()) throw invalid("no faces");

  TwoComplex c;
  c.vertex_names_ = std::move(vertex_names);
  c.edges_ = std::move(edges);
  c.faces_ = std::move(faces);
  c.orientable_ = orientable;
  const auto ne = c.edge_count();
  for (Eigen::Index f = 0; f < c.face_count(); ++f) {
    const auto& sides = c.face(f);
    if (sides.size() < 3) throw invalid("face " + std::to_string(f) + " has fewer than three sides");
    std::set<Eigen::Index> used;
    for (const auto& s : sides) {
      if (s.edge < 0 || s.edge >= ne) throw invalid("face " + std::to_string(f) + " uses an unknown edge");
      if (s.sign != 1 && s.sign != -1) throw invalid("face " + std::to_string(f) + " has a bad sign");
      if (!used.insert(s.edge).second) throw invalid("face " + std::to_string(f) + " uses edge " + std::to_string(s.edge) + " twice");
    }
    for (std::size_t k = 0; k < sides.size(); ++k) {
      const auto& a = sides[k];
      const auto& b = sides[(k + 1) % sides.size()];
      const Eigen::Index end = a.sign > 0 ? c.head(a.edge) : c.tail(a.edge);
      const Eigen::Index start = b.sign > 0 ? c.tail(b.edge) : c.head(b.edge);
      if (end != start) throw invalid("face " + std::to_string(f) + " is not a closed walk");
    }
    std::set<Eigen::Index> corners;
    for (const auto& s : sides) {
      if (!corners.insert(s.sign > 0 ? c.tail(s.edge) : c.head(s.edge)).second) {
        throw invalid("face " + std::to_string(f) + " passes a vertex twice");
      }
    }
  }
  c.build_incidences();
  for (Eigen::Index e = 0; e < ne; ++e) {
    const auto& inc = c.incidences(e);
    if (inc.size() != 2) {
      throw invalid("edge " + std::to_string(e) + " lies on " + std::to_string(inc.size()) + " face sides, expected 2");
    }
    if (orientable && inc[0].sign == inc[1].sign) {
      throw invalid("faces " + std::to_string(inc[0].face) + " and " + std::to_string(inc[1].face) +
                    " are not oriented in agreement along edge " + std::to_string(e));
    }
  }
  // dual connectivity
  std::vector<bool> seen(static_cast<std::size_t>(c.face_count()), false);
  std::queue<Eigen::Index> queue;
  queue.push(0);
  seen[0] = true;
  Eigen::Index reached = 1;
  while (!queue.empty()) {
    const Eigen::Index f = queue.front();
    queue.pop();
    for (const auto& s : c.face(f)) {
      for (const auto& inc : c.incidences(s.edge)) {
        if (!seen[static_cast<std::size_t>(inc.face)]) {
          seen[static_cast<std::size_t>(inc.face)] = true;
          ++reached;
          queue.push(inc.face);
        }
      }
    }
  }
  if (reached != c.face_count()) throw invalid("faces do not form a connected surface");
  if (!orientable && exact_rank(boundary2_matrix(c)) != c.face_count()) {
    throw invalid("declared non-orientable, but the faces admit a coherent orientation");
  }
  return c;
}

void TwoComplex::build_incidences() {
  incidences_.assign(edges_.size(), {});
  for (Eigen::Index f = 0; f < face_count(); ++f) {
    for (const auto& s : face(f)) incidences_[static_cast<std::size_t>(s.edge)].push_back({f, s.sign});
  }
}

Eigen::Index TwoComplex::face_plus(Eigen::Index e) const {
  if (!orientable_) throw Error(ErrorCode::Contract, "face_plus on a non-orientable complex");
  for (const auto& inc : incidences(e)) {
    if (inc.sign > 0) return inc.face;
  }
  throw Error(ErrorCode::Contract, "edge " + std::to_string(e) + " has no face on its left");
}

Eigen::Index TwoComplex::face_minus(Eigen::Index e) const {
  if (!orientable_) throw Error(ErrorCode::Contract, "face_minus on a non-orientable complex");
  for (const auto& inc : incidences(e)) {
    if (inc.sign < 0) return inc.face;
  }
  throw Error(ErrorCode::Contract, "edge " + std::to_string(e) + " has no face on its right");
}

Eigen::Index TwoComplex::vertex_at(Eigen::Index i, Eigen::Index j) const {
  if (!torus_) throw Error(ErrorCode::Contract, "grid coordinates on a non-torus complex");
  return wrap(i, torus_->n1) + torus_->n1 * wrap(j, torus_->n2);
}

Eigen::Index TwoComplex::horizontal_edge(Eigen::Index i, Eigen::Index j) const {
  if (torus_ && torus_->dimension == 1) return vertex_at(i, 0);
  return 2 * vertex_at(i, j);
}

Eigen::Index TwoComplex::vertical_edge(Eigen::Index i, Eigen::Index j) const {
  if (!is_torus2()) throw Error(ErrorCode::Contract, "vertical edges need a two-dimensional torus");
  return 2 * vertex_at(i, j) + 1;
}

Eigen::Index TwoComplex::face_at(Eigen::Index i, Eigen::Index j) const {
  if (!is_torus2()) throw Error(ErrorCode::Contract, "grid faces need a two-dimensional torus");
  return vertex_at(i, j);
}

std::string TwoComplex::edge_key(Eigen::Index e) const {
  if (!torus_) return std::to_string(e);
  if (torus_->dimension == 1) return std::to_string(e);
  const Eigen::Index v = e / 2;
  return std::to_string(v % torus_->n1) + " " + std::to_string(v / torus_->n1) + (e % 2 == 0 ? " h" : " v");
}

std::string TwoComplex::face_key(Eigen::Index f) const {
  if (!is_torus2()) return std::to_string(f);
  return std::to_string(f % torus_->n1) + " " + std::to_string(f / torus_->n1);
}

// --- operators ----------------------------------------------------------------------

VectorField coboundary0(const TwoComplex& c, const ZeroForm& f) {
  require_size(f, c.vertex_count(), "0-form");
  VectorField out(c.edge_count());
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) out(e) = f(c.head(e)) - f(c.tail(e));
  return out;
}

ZeroForm boundary1(const TwoComplex& c, const VectorField& phi) {
  require_size(phi, c.edge_count(), "vector field");
  ZeroForm out = ZeroForm::Zero(c.vertex_count());
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    out(c.tail(e)) += phi(e);
    out(c.head(e)) -= phi(e);
  }
  return out;
}

VectorField boundary2(const TwoComplex& c, const TwoChain& psi) {
  require_size(psi, c.face_count(), "2-chain");
  VectorField out = VectorField::Zero(c.edge_count());
  for (Eigen::Index f = 0; f < c.face_count(); ++f) {
    if (psi(f).is_zero()) continue;
    for (const auto& s : c.face(f)) out(s.edge) += s.sign > 0 ? psi(f) : Rational(-psi(f));
  }
  return out;
}

TwoChain coboundary1(const TwoComplex& c, const VectorField& phi) {
  require_size(phi, c.edge_count(), "vector field");
  TwoChain out = TwoChain::Zero(c.face_count());
  for (Eigen::Index f = 0; f < c.face_count(); ++f) {
    for (const auto& s : c.face(f)) out(f) += s.sign > 0 ? phi(s.edge) : Rational(-phi(s.edge));
  }
  return out;
}

Rational inner(const VectorField& phi, const VectorField& chi) {
  if (phi.size() != chi.size()) throw Error(ErrorCode::Contract, "inner product of fields of different sizes");
  Rational sum;
  for (Eigen::Index e = 0; e < phi.size(); ++e) {
    if (!phi(e).is_zero() && !chi(e).is_zero()) sum += phi(e) * chi(e);
  }
  return sum;
}

RMatrix coboundary0_matrix(const TwoComplex& c) {
  RMatrix m = RMatrix::Zero(c.edge_count(), c.vertex_count());
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    m(e, c.head(e)) += Rational(1);
    m(e, c.tail(e)) -= Rational(1);
  }
  return m;
}

RMatrix boundary2_matrix(const TwoComplex& c) {
  RMatrix m = RMatrix::Zero(c.edge_count(), c.face_count());
  for (Eigen::Index f = 0; f < c.face_count(); ++f) {
    for (const auto& s : c.face(f)) m(s.edge, f) += Rational(s.sign);
  }
  return m;
}

ZeroForm indicator_vertex(const TwoComplex& c, Eigen::Index v) {
  ZeroForm f = ZeroForm::Zero(c.vertex_count());
  f(v) = Rational(1);
  return f;
}

TwoChain indicator_face(const TwoComplex& c, Eigen::Index f) {
  TwoChain psi = TwoChain::Zero(c.face_count());
  psi(f) = Rational(1);
  return psi;
}

std::pair<VectorField, VectorField> harmonic_basis(const TwoComplex& c) {
  if (!c.is_torus2()) throw Error(ErrorCode::Contract, "harmonic basis needs a two-dimensional torus");
  VectorField phi1 = VectorField::Zero(c.edge_count());
  VectorField phi2 = VectorField::Zero(c.edge_count());
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) (e % 2 == 0 ? phi1 : phi2)(e) = Rational(1);
  return {phi1, phi2};
}

bool in_d_lambda2(const TwoComplex& c, const VectorField& phi) {
  require_size(phi, c.edge_count(), "vector field");
  if (c.torus_shape() && c.torus_shape()->dimension == 1) {
    return std::all_of(phi.begin(), phi.end(), [](const Rational& x) { return x.is_zero(); });
  }
  if (c.is_torus2()) {
    const ZeroForm div = boundary1(c, phi);
    if (!std::all_of(div.begin(), div.end(), [](const Rational& x) { return x.is_zero(); })) return false;
    const auto [phi1, phi2] = harmonic_basis(c);
    return inner(phi, phi1).is_zero() && inner(phi, phi2).is_zero();
  }
  try {
    recover_psi(c, phi);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotHomologous) return false;
    throw;
  }
}

TwoChain recover_psi(const TwoComplex& c, const VectorField& phi, Eigen::Index base_face) {
  require_size(phi, c.edge_count(), "vector field");
  if (c.face_count() == 0) {
    if (std::all_of(phi.begin(), phi.end(), [](const Rational& x) { return x.is_zero(); })) return TwoChain(0);
    throw Error(ErrorCode::NotHomologous, "a complex without faces only bounds the zero field");
  }
  if (base_face < 0 || base_face >= c.face_count()) throw Error(ErrorCode::Contract, "base face out of range");

  if (!c.orientable()) {
    const auto solution = exact_solve(boundary2_matrix(c), phi);
    if (!solution) throw Error(ErrorCode::NotHomologous, "the field is not the boundary of any 2-chain");
    return *solution;
  }

  TwoChain psi = TwoChain::Zero(c.face_count());
  std::vector<bool> known(static_cast<std::size_t>(c.face_count()), false);
  known[static_cast<std::size_t>(base_face)] = true;
  std::queue<Eigen::Index> queue;
  queue.push(base_face);
  while (!queue.empty()) {
    const Eigen::Index f = queue.front();
    queue.pop();
    for (const auto& side : c.face(f)) {
      // phi(e) = sign_f psi(f) + sign_g psi(g) across the shared edge
      for (const auto& inc : c.incidences(side.edge)) {
        if (known[static_cast<std::size_t>(inc.face)]) continue;
        const Rational from_f = side.sign > 0 ? psi(f) : Rational(-psi(f));
        const Rational rest = phi(side.edge) - from_f;
        psi(inc.face) = inc.sign > 0 ? rest : Rational(-rest);
        known[static_cast<std::size_t>(inc.face)] = true;
        queue.push(inc.face);
      }
    }
  }
  const VectorField check = boundary2(c, psi);
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    if (check(e) != phi(e)) {
      throw Error(ErrorCode::NotHomologous, "integration around the dual cycle through edge " + c.edge_key(e) +
                                                " does not close");
    }
  }
  return psi;
}

HodgeParts hodge_decompose(const TwoComplex& c, const VectorField& phi) {
  if (!c.is_torus2()) throw Error(ErrorCode::Contract, "Hodge split is implemented on the two-dimensional torus");
  require_size(phi, c.edge_count(), "vector field");
  HodgeParts parts;
  const auto [phi1, phi2] = harmonic_basis(c);
  parts.c1 = inner(phi, phi1) / inner(phi1, phi1);
  parts.c2 = inner(phi, phi2) / inner(phi2, phi2);
  parts.harmonic = phi1 * parts.c1 + phi2 * parts.c2;

  // normal equations <phi - delta f, delta 1_x> = 0, i.e. d(delta f) = d phi,
  // with f pinned at vertex 0
  const RMatrix grad = coboundary0_matrix(c);
  RMatrix laplacian = grad.transpose() * grad;
  RVector rhs = grad.transpose() * phi;
  laplacian.row(0).setZero();
  laplacian(0, 0) = Rational(1);
  rhs(0) = Rational(0);
  const auto f = exact_solve(laplacian, rhs);
  if (!f) throw Error(ErrorCode::Contract, "graph Laplacian system is inconsistent");
  parts.potential = *f;
  parts.gradient = coboundary0(c, parts.potential);
  parts.homologous = phi - parts.gradient - parts.harmonic;
  return parts;
}

// --- rates --------------------------------------------------------------------------

EdgeRates EdgeRates::zero(Eigen::Index edges) { return {RVector::Zero(edges), RVector::Zero(edges)}; }

EdgeRates& EdgeRates::operator+=(const EdgeRates& other) {
  if (forward.size() != other.forward.size()) throw Error(ErrorCode::Contract, "adding rates of different sizes");
  forward += other.forward;
  backward += other.backward;
  return *this;
}

VectorField rates_to_field(const EdgeRates& r) { return r.forward - r.backward; }

EdgeRates field_to_rates(const VectorField& phi) {
  EdgeRates r = EdgeRates::zero(phi.size());
  for (Eigen::Index e = 0; e < phi.size(); ++e) {
    r.forward(e) = positive_part(phi(e));
    r.backward(e) = positive_part(Rational(-phi(e)));
  }
  return r;
}

EdgeRates symmetric_part(const EdgeRates& r) {
  RVector s(r.forward.size());
  for (Eigen::Index e = 0; e < s.size(); ++e) s(e) = min(r.forward(e), r.backward(e));
  return symmetric_rates(s);
}

EdgeRates symmetric_rates(const RVector& s) { return {s, s}; }

}  // namespace cycdec
