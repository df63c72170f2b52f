#pragma once

// Two-dimensional cell complexes (discrete tori and user-supplied closed
// surfaces), the boundary and coboundary operators between 0-forms, vector
// fields and 2-chains, potential recovery, and the Hodge split on the torus.
//
// Chains are plain exact vectors indexed by cell: a ZeroForm by vertex, a
// VectorField by chosen oriented edge (reversed edges carry the negated
// value), a TwoChain by chosen oriented face.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cycdec/rational.hpp"

namespace cycdec {

using ZeroForm = RVector;
using VectorField = RVector;
using TwoChain = RVector;

/// Oriented edge of a face boundary: +1 when the face runs along the stored
/// edge direction, -1 when it runs against it.
struct SignedEdge {
  Eigen::Index edge = 0;
  int sign = 1;
  friend bool operator==(const SignedEdge&, const SignedEdge&) = default;
};

struct Incidence {
  Eigen::Index face = 0;
  int sign = 1;
};

struct TorusShape {
  int dimension = 2;  // 1 or 2
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 1;  // 1 for the cycle
};

/// Immutable cell complex. Every edge lies on exactly two face sides (for the
/// one-dimensional torus there are no faces at all).
///
/// Torus conventions, N1 x N2 with vertex (i, j) at index i + N1 j:
///  - edge 2v runs from v to v + e1 ("h"), edge 2v + 1 from v to v + e2 ("v");
///  - face v has lower-left corner v and runs anticlockwise
///    +h(v), +v(v + e1), -h(v + e2), -v(v);
///  - so the face containing a horizontal edge forwards is the one above it,
///    and the face containing a vertical edge forwards is the one to its left.
/// The one-dimensional torus of size N has edge x from x to x + 1.
class TwoComplex {
 public:
  static TwoComplex torus(Eigen::Index n1, Eigen::Index n2);
  static TwoComplex cycle(Eigen::Index n);

  /// Validates closed walks, two sides per edge, connectivity, and the
  /// orientability claim. Throws InvalidComplex.
  static TwoComplex surface(std::vector<std::string> vertex_names, std::vector<std::pair<Eigen::Index, Eigen::Index>> edges,
                            std::vector<std::vector<SignedEdge>> faces, bool orientable);

  Eigen::Index vertex_count() const { return static_cast<Eigen::Index>(vertex_names_.size()); }
  Eigen::Index edge_count() const { return static_cast<Eigen::Index>(edges_.size()); }
  Eigen::Index face_count() const { return static_cast<Eigen::Index>(faces_.size()); }

  const std::string& vertex_name(Eigen::Index v) const { return vertex_names_[static_cast<std::size_t>(v)]; }
  Eigen::Index tail(Eigen::Index e) const { return edges_[static_cast<std::size_t>(e)].first; }
  Eigen::Index head(Eigen::Index e) const { return edges_[static_cast<std::size_t>(e)].second; }
  const std::vector<SignedEdge>& face(Eigen::Index f) const { return faces_[static_cast<std::size_t>(f)]; }
  const std::vector<Incidence>& incidences(Eigen::Index e) const { return incidences_[static_cast<std::size_t>(e)]; }

  bool orientable() const { return orientable_; }
  const std::optional<TorusShape>& torus_shape() const { return torus_; }
  bool is_torus2() const { return torus_ && torus_->dimension == 2; }

  /// Face containing edge e forwards / backwards (orientable complexes only).
  Eigen::Index face_plus(Eigen::Index e) const;
  Eigen::Index face_minus(Eigen::Index e) const;

  // Torus indexing (coordinates are reduced modulo the mesh).
  Eigen::Index vertex_at(Eigen::Index i, Eigen::Index j = 0) const;
  Eigen::Index horizontal_edge(Eigen::Index i, Eigen::Index j = 0) const;
  Eigen::Index vertical_edge(Eigen::Index i, Eigen::Index j) const;
  Eigen::Index face_at(Eigen::Index i, Eigen::Index j) const;

  /// Human-readable keys used by the file formats: "i j h", "i j v", "x" or
  /// the plain edge index; faces as "i j" or the face index.
  std::string edge_key(Eigen::Index e) const;
  std::string face_key(Eigen::Index f) const;

 private:
  TwoComplex() = default;
  void build_incidences();

  std::vector<std::string> vertex_names_;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges_;
  std::vector<std::vector<SignedEdge>> faces_;
  std::vector<std::vector<Incidence>> incidences_;
  bool orientable_ = true;
  std::optional<TorusShape> torus_;
};

/// delta f (x, y) = f(y) - f(x)
VectorField coboundary0(const TwoComplex& c, const ZeroForm& f);
/// d phi (x) = sum of phi over edges leaving x (reversed edges count negated)
ZeroForm boundary1(const TwoComplex& c, const VectorField& phi);
/// d psi (e) = sum over faces containing e of the signed face value
VectorField boundary2(const TwoComplex& c, const TwoChain& psi);
/// Circulation of phi around every face.
TwoChain coboundary1(const TwoComplex& c, const VectorField& phi);

/// Sum over chosen edges of phi * chi.
Rational inner(const VectorField& phi, const VectorField& chi);

/// Matrices of coboundary0 (|E| x |V|) and boundary2 (|E| x |F|).
RMatrix coboundary0_matrix(const TwoComplex& c);
RMatrix boundary2_matrix(const TwoComplex& c);

ZeroForm indicator_vertex(const TwoComplex& c, Eigen::Index v);
TwoChain indicator_face(const TwoComplex& c, Eigen::Index f);

/// Constant unit fields along e1 and e2 on the two-dimensional torus.
std::pair<VectorField, VectorField> harmonic_basis(const TwoComplex& c);

/// Whether phi is the boundary of some 2-chain. On the two-dimensional torus
/// this is zero divergence plus zero total flux in both directions; on the
/// cycle only the zero field qualifies; otherwise recover_psi decides.
bool in_d_lambda2(const TwoComplex& c, const VectorField& phi);

/// A 2-chain with boundary phi and value zero on `base_face`. Orientable
/// complexes integrate along a breadth-first tree of the dual graph and check
/// every remaining dual edge; non-orientable complexes solve the (uniquely
/// solvable) linear system, ignoring base_face. Throws NotHomologous.
TwoChain recover_psi(const TwoComplex& c, const VectorField& phi, Eigen::Index base_face = 0);

struct HodgeParts {
  VectorField gradient;
  VectorField homologous;
  VectorField harmonic;
  ZeroForm potential;  // gradient = coboundary0(potential), potential(0) = 0
  Rational c1, c2;     // harmonic = c1 phi_1 + c2 phi_2
};

/// Exact three-way split on the two-dimensional torus; Contract otherwise.
HodgeParts hodge_decompose(const TwoComplex& c, const VectorField& phi);

/// Transition weights on both orientations of every chosen edge.
struct EdgeRates {
  RVector forward;   // r(tail, head)
  RVector backward;  // r(head, tail)

  static EdgeRates zero(Eigen::Index edges);
  EdgeRates& operator+=(const EdgeRates& other);
  friend EdgeRates operator+(EdgeRates a, const EdgeRates& b) { return a += b; }
  friend bool operator==(const EdgeRates&, const EdgeRates&) = default;
};

/// phi^r = r(x, y) - r(y, x)
VectorField rates_to_field(const EdgeRates& r);
/// r^phi(x, y) = [phi(x, y)]_+
EdgeRates field_to_rates(const VectorField& phi);
/// s(x, y) = min(r(x, y), r(y, x)) on both orientations.
EdgeRates symmetric_part(const EdgeRates& r);
/// Both orientations carry s.
EdgeRates symmetric_rates(const RVector& s);

// Text formats.
//  complex:  "orientable yes|no", "vertex <name>", "edge <u> <v>",
//            "face +0 -3 +2 ..." (signed edge indices in cyclic order)
//  field:    "field" then "<edge key> <value>"
//  rates:    "rates" then "<edge key> <forward> <backward>"
//  chain:    "chain" then "<face key> <value>"
// Unlisted cells are zero.
TwoComplex read_complex(std::istream& in, std::string_view source = "<complex>");
void write_complex(std::ostream& out, const TwoComplex& c);

VectorField read_field(std::istream& in, const TwoComplex& c, std::string_view source = "<field>");
EdgeRates read_rates(std::istream& in, const TwoComplex& c, std::string_view source = "<rates>");
TwoChain read_chain(std::istream& in, const TwoComplex& c, std::string_view source = "<chain>");
void write_field(std::ostream& out, const TwoComplex& c, const VectorField& phi, int decimals = -1,
                 bool skip_zero = true);
void write_rates(std::ostream& out, const TwoComplex& c, const EdgeRates& r, int decimals = -1);
void write_chain(std::ostream& out, const TwoComplex& c, const TwoChain& psi, int decimals = -1);

/// Either a field or a rates file, told apart by the header. A field is
/// turned into its minimal rates r^phi.
EdgeRates read_rates_or_field(std::istream& in, const TwoComplex& c, std::string_view source = "<input>");

}  // namespace cycdec
