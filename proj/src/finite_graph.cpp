#include "cycdec/finite_graph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <queue>

#include "cycdec/error.hpp"
#include "cycdec/linalg.hpp"
#include "cycdec/text_io.hpp"

namespace cycdec {

void WeightedDigraph::set_weight(const Vertex& u, const Vertex& v, const Rational& w) {
  if (w.sign() < 0) throw Error(ErrorCode::Contract, "negative weight on " + u + " -> " + v);
  if (u == v && !allow_self_loops_ && w.sign() > 0) {
    throw Error(ErrorCode::Contract, "self-loop at " + u + " outside bistochastic mode");
  }
  vertices_.insert(u);
  vertices_.insert(v);
  if (w.is_zero()) {
    edges_.erase({u, v});
  } else {
    edges_[{u, v}] = w;
  }
}

void WeightedDigraph::add_weight(const Vertex& u, const Vertex& v, const Rational& delta) {
  set_weight(u, v, weight(u, v) + delta);
}

Rational WeightedDigraph::weight(const Vertex& u, const Vertex& v) const {
  const auto it = edges_.find({u, v});
  return it == edges_.end() ? Rational(0) : it->second;
}

Rational WeightedDigraph::out_weight(const Vertex& v) const {
  Rational sum;
  for (auto it = edges_.lower_bound({v, Vertex{}}); it != edges_.end() && it->first.first == v; ++it) {
    sum += it->second;
  }
  return sum;
}

Rational WeightedDigraph::in_weight(const Vertex& v) const {
  Rational sum;
  for (const auto& [e, w] : edges_) {
    if (e.second == v) sum += w;
  }
  return sum;
}

GraphCycle::GraphCycle(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw Error(ErrorCode::Contract, "empty cycle");
  std::vector<Vertex> sorted = vertices_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::Contract, "cycle repeats a vertex");
  }
  std::rotate(vertices_.begin(), std::min_element(vertices_.begin(), vertices_.end()), vertices_.end());
}

std::vector<Edge> GraphCycle::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    out.emplace_back(vertices_[i], vertices_[(i + 1) % vertices_.size()]);
  }
  return out;
}

WeightedDigraph GraphDecomposition::reconstruct() const {
  WeightedDigraph g(true);
  for (const auto& term : terms) {
    for (const auto& v : term.cycle.vertices()) g.add_vertex(v);
    for (const auto& [u, v] : term.cycle.edges()) g.add_weight(u, v, term.weight);
  }
  return g;
}

BalanceReport is_balanced_graph(const WeightedDigraph& g) {
  std::map<Vertex, Rational> net;
  for (const auto& [e, w] : g.edges()) {
    net[e.first] += w;
    net[e.second] -= w;
  }
  BalanceReport report;
  for (const auto& [v, x] : net) {
    if (!x.is_zero()) report.violators.push_back(v);
  }
  report.balanced = report.violators.empty();
  return report;
}

MinCycle extract_min_cycle(const WeightedDigraph& g) {
  if (g.edges().empty()) throw Error(ErrorCode::EmptyGraph, "graph has no edges");
  auto seed = g.edges().begin();
  for (auto it = g.edges().begin(); it != g.edges().end(); ++it) {
    if (it->second < seed->second) seed = it;
  }
  std::vector<Vertex> path{seed->first.first};
  std::map<Vertex, std::size_t> position{{path.front(), 0}};
  Vertex next = seed->first.second;
  while (!position.contains(next)) {
    position.emplace(next, path.size());
    path.push_back(next);
    // lightest exit, least target among equals (edges iterate in target order)
    auto best = g.edges().end();
    for (auto it = g.edges().lower_bound({next, Vertex{}}); it != g.edges().end() && it->first.first == next; ++it) {
      if (best == g.edges().end() || it->second < best->second) best = it;
    }
    if (best == g.edges().end()) throw Error(ErrorCode::NotBalanced, "greedy walk stalled at vertex " + next);
    next = best->first.second;
  }
  std::vector<Vertex> loop(path.begin() + static_cast<std::ptrdiff_t>(position.at(next)), path.end());
  MinCycle out{GraphCycle(std::move(loop)), Rational(0)};
  bool first = true;
  for (const auto& [u, v] : out.cycle.edges()) {
    const Rational w = g.weight(u, v);
    if (first || w < out.m) out.m = w;
    first = false;
  }
  return out;
}

namespace {

std::string join(const std::vector<Vertex>& vs) {
  std::string out;
  for (const auto& v : vs) out += (out.empty() ? "" : " ") + v;
  return out;
}

}  // namespace

GraphDecomposition decompose_graph(const WeightedDigraph& g) {
  if (g.allows_self_loops()) {
    for (const auto& [e, w] : g.edges()) {
      if (e.first == e.second) throw Error(ErrorCode::Contract, "self-loop at " + e.first + " in a general graph");
    }
  }
  const auto report = is_balanced_graph(g);
  if (!report.balanced) throw Error(ErrorCode::NotBalanced, "in-weight differs from out-weight at " + join(report.violators));
  GraphDecomposition dec;
  WeightedDigraph residual = g;
  while (residual.edge_count() > 0) {
    MinCycle mc = extract_min_cycle(residual);
    for (const auto& [u, v] : mc.cycle.edges()) residual.add_weight(u, v, -mc.m);
    dec.terms.push_back({std::move(mc.cycle), std::move(mc.m)});
  }
  return dec;
}

bool is_bistochastic(const WeightedDigraph& g) {
  for (const auto& v : g.vertices()) {
    if (g.out_weight(v) != Rational(1) || g.in_weight(v) != Rational(1)) return false;
  }
  return true;
}

namespace {

// Hopcroft–Karp on the bipartite graph rows -> columns.
class HopcroftKarp {
 public:
  explicit HopcroftKarp(std::vector<std::vector<int>> adj)
      : adj_(std::move(adj)), n_(static_cast<int>(adj_.size())), match_row_(n_, -1), match_col_(n_, -1), dist_(n_) {}

  // Returns column assigned to each row, or empty when no perfect matching exists.
  std::vector<int> perfect_matching() {
    int size = 0;
    while (bfs()) {
      for (int r = 0; r < n_; ++r) {
        if (match_row_[r] < 0 && dfs(r)) ++size;
      }
    }
    if (size < n_) return {};
    return match_row_;
  }

 private:
  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (int r = 0; r < n_; ++r) {
      dist_[r] = match_row_[r] < 0 ? 0 : kInf;
      if (match_row_[r] < 0) q.push(r);
    }
    while (!q.empty()) {
      const int r = q.front();
      q.pop();
      for (int c : adj_[r]) {
        const int back = match_col_[c];
        if (back < 0) {
          found = true;
        } else if (dist_[back] == kInf) {
          dist_[back] = dist_[r] + 1;
          q.push(back);
        }
      }
    }
    return found;
  }

  bool dfs(int r) {
    for (int c : adj_[r]) {
      const int back = match_col_[c];
      if (back < 0 || (dist_[back] == dist_[r] + 1 && dfs(back))) {
        match_row_[r] = c;
        match_col_[c] = r;
        return true;
      }
    }
    dist_[r] = kInf;
    return false;
  }

  static constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<std::vector<int>> adj_;
  int n_;
  std::vector<int> match_row_, match_col_, dist_;
};

}  // namespace

std::vector<BirkhoffTerm> birkhoff_decompose(const WeightedDigraph& g) {
  if (!is_bistochastic(g)) throw Error(ErrorCode::NotBistochastic, "rows and columns must sum to one");
  const std::vector<Vertex> labels(g.vertices().begin(), g.vertices().end());
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw Error(ErrorCode::Contract, "bistochastic graph without vertices");
  std::map<Vertex, int> index;
  for (int i = 0; i < n; ++i) index[labels[static_cast<std::size_t>(i)]] = i;
  RMatrix residual = RMatrix::Zero(n, n);
  for (const auto& [e, w] : g.edges()) residual(index.at(e.first), index.at(e.second)) = w;

  std::vector<std::vector<int>> perms;
  std::vector<Rational> weights;
  Rational remaining(1);
  while (remaining.sign() > 0) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        if (residual(r, c).sign() > 0) adj[static_cast<std::size_t>(r)].push_back(c);
      }
    }
    std::vector<int> match = HopcroftKarp(std::move(adj)).perfect_matching();
    if (match.empty()) throw Error(ErrorCode::NoPerfectMatching, "positive support has no perfect matching");
    Rational m = residual(0, match[0]);
    for (int r = 1; r < n; ++r) m = min(m, residual(r, match[static_cast<std::size_t>(r)]));
    for (int r = 0; r < n; ++r) residual(r, match[static_cast<std::size_t>(r)]) -= m;
    remaining -= m;
    perms.push_back(std::move(match));
    weights.push_back(std::move(m));
  }

  std::vector<BirkhoffTerm> out;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    Permutation p;
    for (int r = 0; r < n; ++r) {
      p[labels[static_cast<std::size_t>(r)]] = labels[static_cast<std::size_t>(perms[k][static_cast<std::size_t>(r)])];
    }
    out.push_back({std::move(p), weights[k]});
  }
  // greedy peeling can exceed the dimension bound
  return reduce_birkhoff(g, std::move(out));
}

std::vector<BirkhoffTerm> reduce_birkhoff(const WeightedDigraph& g, std::vector<BirkhoffTerm> terms) {
  const std::vector<Vertex> labels(g.vertices().begin(), g.vertices().end());
  const auto n = static_cast<Eigen::Index>(labels.size());
  const auto bound = static_cast<std::size_t>((n - 1) * (n - 1) + 1);
  if (terms.size() <= bound) return terms;
  std::map<Vertex, Eigen::Index> index;
  for (Eigen::Index i = 0; i < n; ++i) index[labels[static_cast<std::size_t>(i)]] = i;

  // one column per permutation matrix, plus the convexity row
  const Eigen::Index cells = n * n;
  RMatrix a = RMatrix::Zero(cells + 1, static_cast<Eigen::Index>(terms.size()));
  RVector b = RVector::Zero(cells + 1);
  for (const auto& [e, w] : g.edges()) b(index.at(e.first) * n + index.at(e.second)) = w;
  b(cells) = Rational(1);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    if (terms[k].perm.size() != labels.size()) throw Error(ErrorCode::Contract, "permutation on the wrong vertex set");
    for (const auto& [u, v] : terms[k].perm) a(index.at(u) * n + index.at(v), col) = Rational(1);
    a(cells, col) = Rational(1);
  }
  const auto vertex = feasible_vertex(a, b);
  if (!vertex) throw Error(ErrorCode::Contract, "terms do not combine to the given matrix");
  std::vector<BirkhoffTerm> out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const Rational& w = (*vertex)(static_cast<Eigen::Index>(k));
    if (w.sign() > 0) out.push_back({std::move(terms[k].perm), w});
  }
  return out;
}

PermutationCycles permutation_to_cycles(const Permutation& perm) {
  std::set<Vertex> images;
  for (const auto& [x, y] : perm) {
    if (!perm.contains(y) || !images.insert(y).second) {
      throw Error(ErrorCode::Contract, "permutation is not a bijection at " + x);
    }
  }
  PermutationCycles out;
  std::set<Vertex> seen;
  for (const auto& [start, image] : perm) {
    if (seen.contains(start)) continue;
    std::vector<Vertex> cycle;
    for (Vertex x = start; !seen.contains(x);) {
      seen.insert(x);
      cycle.push_back(x);
      x = perm.at(x);
    }
    if (cycle.size() == 1) {
      out.fixed_points.push_back(start);
    } else {
      out.cycles.emplace_back(std::move(cycle));
    }
  }
  return out;
}

GraphDecomposition birkhoff_to_cycles(const std::vector<BirkhoffTerm>& terms) {
  GraphDecomposition dec;
  for (const auto& term : terms) {
    const auto split = permutation_to_cycles(term.perm);
    for (const auto& c : split.cycles) dec.terms.push_back({c, term.weight});
    for (const auto& v : split.fixed_points) dec.terms.push_back({GraphCycle({v}), term.weight});
  }
  return dec;
}

// --- text formats -------------------------------------------------------------------

NamedDigraph read_digraph(std::istream& in, std::string_view source, bool allow_self_loops) {
  const auto lines = text::read_lines(in);
  if (lines.empty() || lines.front().tokens.front() != "digraph" || lines.front().tokens.size() != 2) {
    text::fail(source, lines.empty() ? 0 : lines.front().number, "expected 'digraph <name>' header");
  }
  NamedDigraph out{lines.front().tokens[1], WeightedDigraph(allow_self_loops)};
  std::map<Edge, std::size_t> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens.size() == 2 && line.tokens[0] == "vertex") {
      out.graph.add_vertex(line.tokens[1]);
      continue;
    }
    if (line.tokens.size() != 3) text::fail(source, line.number, "expected 'u v weight'");
    const Edge e{line.tokens[0], line.tokens[1]};
    const Rational w = text::parse_rational(source, line, line.tokens[2]);
    if (w.sign() < 0) text::fail(source, line.number, "negative weight");
    if (e.first == e.second && !allow_self_loops) text::fail(source, line.number, "self-loop " + e.first + " -> " + e.first);
    if (const auto [it, fresh] = seen.emplace(e, line.number); !fresh) {
      text::fail(source, line.number, "duplicate edge (first on line " + std::to_string(it->second) + ")");
    }
    out.graph.set_weight(e.first, e.second, w);
  }
  return out;
}

void write_digraph(std::ostream& out, const NamedDigraph& g, int decimals) {
  out << "digraph " << g.name << '\n';
  for (const auto& v : g.graph.vertices()) {
    bool touched = false;
    for (const auto& [e, w] : g.graph.edges()) touched = touched || e.first == v || e.second == v;
    if (!touched) out << "vertex " << v << '\n';
  }
  for (const auto& [e, w] : g.graph.edges()) out << e.first << ' ' << e.second << ' ' << text::number(w, decimals) << '\n';
}

void write_graph_decomposition(std::ostream& out, const GraphDecomposition& dec, int decimals) {
  out << "digraph " << dec.name << '\n';
  for (const auto& term : dec.terms) {
    out << "cycle " << text::number(term.weight, decimals);
    for (const auto& v : term.cycle.vertices()) out << ' ' << v;
    out << '\n';
  }
}

GraphDecomposition read_graph_decomposition(std::istream& in, std::string_view source) {
  const auto lines = text::read_lines(in);
  if (lines.empty() || lines.front().tokens.front() != "digraph" || lines.front().tokens.size() != 2) {
    text::fail(source, lines.empty() ? 0 : lines.front().number, "expected 'digraph <name>' header");
  }
  GraphDecomposition dec;
  dec.name = lines.front().tokens[1];
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens[0] != "cycle" || line.tokens.size() < 3) text::fail(source, line.number, "expected 'cycle weight v0 v1 ...'");
    const Rational w = text::parse_rational(source, line, line.tokens[1]);
    if (w.sign() <= 0) text::fail(source, line.number, "cycle weight must be positive");
    try {
      dec.terms.push_back({GraphCycle(std::vector<Vertex>(line.tokens.begin() + 2, line.tokens.end())), w});
    } catch (const Error& e) {
      text::fail(source, line.number, e.what());
    }
  }
  return dec;
}

void write_birkhoff(std::ostream& out, const std::string& name, const std::vector<BirkhoffTerm>& terms, int decimals) {
  out << "birkhoff " << name << '\n';
  for (const auto& term : terms) {
    out << "perm " << text::number(term.weight, decimals);
    for (const auto& [u, v] : term.perm) out << ' ' << u << ':' << v;
    out << '\n';
  }
}

std::vector<BirkhoffTerm> read_birkhoff(std::istream& in, std::string_view source) {
  const auto lines = text::read_lines(in);
  if (lines.empty() || lines.front().tokens.front() != "birkhoff" || lines.front().tokens.size() != 2) {
    text::fail(source, lines.empty() ? 0 : lines.front().number, "expected 'birkhoff <name>' header");
  }
  std::vector<BirkhoffTerm> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.tokens[0] != "perm" || line.tokens.size() < 3) text::fail(source, line.number, "expected 'perm weight u:v ...'");
    BirkhoffTerm term{{}, text::parse_rational(source, line, line.tokens[1])};
    for (std::size_t t = 2; t < line.tokens.size(); ++t) {
      const auto colon = line.tokens[t].find(':');
      if (colon == std::string::npos) text::fail(source, line.number, "expected 'u:v', got '" + line.tokens[t] + "'");
      if (!term.perm.emplace(line.tokens[t].substr(0, colon), line.tokens[t].substr(colon + 1)).second) {
        text::fail(source, line.number, "vertex mapped twice");
      }
    }
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace cycdec
