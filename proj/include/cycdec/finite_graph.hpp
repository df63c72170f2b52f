#pragma once

// Weighted digraphs on finitely many labelled vertices: balance, greedy
// cycle decomposition, and Birkhoff decomposition of bistochastic weights.

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cycdec/rational.hpp"

namespace cycdec {

using Vertex = std::string;
using Edge = std::pair<Vertex, Vertex>;

/// Vertex set plus strictly positive weights on ordered pairs. Self-loops are
/// rejected unless the graph is built in bistochastic mode.
class WeightedDigraph {
 public:
  explicit WeightedDigraph(bool allow_self_loops = false) : allow_self_loops_(allow_self_loops) {}

  bool allows_self_loops() const { return allow_self_loops_; }

  void add_vertex(const Vertex& v) { vertices_.insert(v); }
  /// Sets r(u,v); a zero weight removes the edge, a negative one is an error.
  void set_weight(const Vertex& u, const Vertex& v, const Rational& w);
  /// r(u,v) += delta, keeping the result nonnegative.
  void add_weight(const Vertex& u, const Vertex& v, const Rational& delta);

  Rational weight(const Vertex& u, const Vertex& v) const;
  Rational out_weight(const Vertex& v) const;
  Rational in_weight(const Vertex& v) const;

  const std::set<Vertex>& vertices() const { return vertices_; }
  const std::map<Edge, Rational>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_;
  }

 private:
  bool allow_self_loops_;
  std::set<Vertex> vertices_;
  std::map<Edge, Rational> edges_;
};

/// Closed walk through distinct vertices, stored with its least label first.
/// A single vertex stands for the trivial cycle (a self-loop).
class GraphCycle {
 public:
  GraphCycle() = default;
  /// Rotates so that the least label comes first; repeated vertices are an
  /// error.
  explicit GraphCycle(std::vector<Vertex> vertices);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool trivial() const { return vertices_.size() == 1; }
  /// Consecutive pairs including the wrap-around one.
  std::vector<Edge> edges() const;

  friend auto operator<=>(const GraphCycle&, const GraphCycle&) = default;

 private:
  std::vector<Vertex> vertices_;
};

struct GraphTerm {
  GraphCycle cycle;
  Rational weight;
};

struct GraphDecomposition {
  std::string name = "g";
  std::vector<GraphTerm> terms;

  /// sum weight * indicator(cycle edges); self-loops allowed for trivial cycles.
  WeightedDigraph reconstruct() const;
};

struct BalanceReport {
  bool balanced = true;
  std::vector<Vertex> violators;  // vertices with in-weight != out-weight
};

BalanceReport is_balanced_graph(const WeightedDigraph& g);

struct MinCycle {
  GraphCycle cycle;
  Rational m;  // least weight along the cycle
};

/// Greedy walk seeded by a globally minimal edge; each step follows the
/// lightest outgoing edge, ties going to the least target label. Throws
/// EmptyGraph when there are no edges and NotBalanced if the walk reaches a
/// vertex without exits.
MinCycle extract_min_cycle(const WeightedDigraph& g);

/// Throws NotBalanced (listing the violating vertices) unless in = out
/// everywhere. At most edge_count() terms.
GraphDecomposition decompose_graph(const WeightedDigraph& g);

/// Every row and column sums to one.
bool is_bistochastic(const WeightedDigraph& g);

using Permutation = std::map<Vertex, Vertex>;

struct BirkhoffTerm {
  Permutation perm;
  Rational weight;
};

/// Convex combination of permutations with at most (n-1)^2 + 1 terms.
/// Throws NotBistochastic.
std::vector<BirkhoffTerm> birkhoff_decompose(const WeightedDigraph& g);

/// Replaces a convex combination of permutations equal to g by a basic one
/// with at most (n-1)^2 + 1 terms; shorter inputs are returned unchanged.
std::vector<BirkhoffTerm> reduce_birkhoff(const WeightedDigraph& g, std::vector<BirkhoffTerm> terms);

struct PermutationCycles {
  std::vector<GraphCycle> cycles;   // length >= 2
  std::vector<Vertex> fixed_points;
};

PermutationCycles permutation_to_cycles(const Permutation& perm);

/// Each permutation split into its disjoint cycles (fixed points become
/// trivial cycles), carrying the permutation's weight.
GraphDecomposition birkhoff_to_cycles(const std::vector<BirkhoffTerm>& terms);

// Text formats: "digraph <name>" then "u v weight" lines; decompositions use
// "digraph <name>" then "cycle <weight> v0 v1 ..." lines.
struct NamedDigraph {
  std::string name;
  WeightedDigraph graph;
};

NamedDigraph read_digraph(std::istream& in, std::string_view source = "<graph>", bool allow_self_loops = false);
void write_digraph(std::ostream& out, const NamedDigraph& g, int decimals = -1);
void write_graph_decomposition(std::ostream& out, const GraphDecomposition& dec, int decimals = -1);
GraphDecomposition read_graph_decomposition(std::istream& in, std::string_view source = "<decomposition>");
void write_birkhoff(std::ostream& out, const std::string& name, const std::vector<BirkhoffTerm>& terms,
                    int decimals = -1);
std::vector<BirkhoffTerm> read_birkhoff(std::istream& in, std::string_view source = "<decomposition>");

}  // namespace cycdec
