#include "cycdec/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cycdec/complex.hpp"
#include "cycdec/discretize.hpp"
#include "cycdec/elementary.hpp"
#include "cycdec/error.hpp"
#include "cycdec/finite_graph.hpp"
#include "cycdec/lattice.hpp"
#include "cycdec/text_io.hpp"
#include "json.hpp"

namespace cycdec::cli {

namespace {

struct Options {
  std::string kind;
  std::string mode;
  std::string input;
  std::string torus;
  int dim = 2;
  bool dim_given = false;
  std::string surface;
  bool verify = false;
  bool json = false;
  bool periodic = false;
  int decimals = -1;
  std::string shift;
  std::string a;
  std::string tail = "inverse-square";
  int steps = 10;
  std::string potential;
  std::vector<Eigen::Index> grid_shift;
  bool chain = false;
  std::vector<std::string> noise;
  std::uint64_t seed = 0;
  bool no_shift = false;
};

// Input problems that are not parse errors inside a file.
[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::Contract, what); }

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotBalanced:
    case ErrorCode::NotBistochastic:
    case ErrorCode::NoPerfectMatching:
    case ErrorCode::NotHomologous:
    case ErrorCode::NotInRe:
    case ErrorCode::NegativeEdgeWeight:
    case ErrorCode::OracleExhausted:
    case ErrorCode::EmptyGraph:
    case ErrorCode::Infeasible:
    case ErrorCode::NoSolution:
    case ErrorCode::NotGeneralPosition:
    case ErrorCode::ZeroNotInterior:
      return kNegative;
    default:
      return kInputError;
  }
}

std::ifstream open(const std::string& path) {
  if (path.empty()) usage("an input file is required");
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, path + ": cannot open");
  return in;
}

std::pair<Eigen::Index, Eigen::Index> torus_size(const std::string& spec) {
  const auto x = spec.find('x');
  auto number = [&](const std::string& s) -> Eigen::Index {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || v < 1) usage("--torus expects N or N1xN2, got '" + spec + "'");
    return v;
  };
  if (x == std::string::npos) {
    const auto n = number(spec);
    return {n, n};
  }
  return {number(spec.substr(0, x)), number(spec.substr(x + 1))};
}

TwoComplex load_complex(const Options& o, int default_dim = 2) {
  if (!o.surface.empty()) {
    if (!o.torus.empty()) usage("give either --torus or --surface, not both");
    auto in = open(o.surface);
    return read_complex(in, o.surface);
  }
  if (o.torus.empty()) usage("a complex is required (--torus N, --torus N1xN2 or --surface file)");
  const int dim = o.dim_given ? o.dim : default_dim;
  const auto [n1, n2] = torus_size(o.torus);
  if (dim == 1) {
    if (o.torus.find('x') != std::string::npos) usage("--dim 1 takes a single size");
    return TwoComplex::cycle(n1);
  }
  if (dim != 2) usage("--dim must be 1 or 2");
  return TwoComplex::torus(n1, n2);
}

EdgeRates load_rates(const Options& o, const TwoComplex& c) {
  auto in = open(o.input);
  return read_rates_or_field(in, c, o.input);
}

std::optional<Rational> parse_optional(const std::string& text, const std::string& flag) {
  if (text.empty()) return std::nullopt;
  try {
    return Rational::parse(text);
  } catch (const Error&) {
    usage(flag + " expects a rational, got '" + text + "'");
  }
}

// Verdict output: "key value" lines, or one JSON object with --json.
class Records {
 public:
  void add(const std::string& key, const std::string& value) { items_.emplace_back(key, value); }

  void write(std::ostream& out, bool json) const {
    if (!json) {
      for (const auto& [k, v] : items_) out << k << ' ' << v << '\n';
      return;
    }
    nlohmann::ordered_json doc = nlohmann::ordered_json::object();
    std::map<std::string, std::size_t> count;
    for (const auto& [k, v] : items_) ++count[k];
    for (const auto& [k, v] : items_) {
      if (count[k] > 1) {
        doc[k].push_back(v);
      } else {
        doc[k] = v;
      }
    }
    out << doc.dump(2) << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

std::string verdict(bool yes) { return yes ? "yes" : "no"; }

// Writes a decomposition, optionally re-reading the text and checking the
// reconstruction exactly before it is accepted.
int emit(std::ostream& out, std::ostream& err, const Options& o, const std::function<void(std::ostream&)>& write,
         const std::function<bool(std::istream&)>& check) {
  std::ostringstream text;
  write(text);
  out << text.str();
  if (!o.verify) return kSuccess;
  std::istringstream back(text.str());
  if (!check(back)) {
    err << "verification failed: the decomposition does not reproduce the input\n";
    return kNegative;
  }
  out << "# verified exact\n";
  return kSuccess;
}

// --- check ------------------------------------------------------------------------

int check(const Options& o, std::ostream& out) {
  Records rec;
  bool yes = false;
  const int d = o.decimals;
  if (o.kind == "graph") {
    auto in = open(o.input);
    const auto report = is_balanced_graph(read_digraph(in, o.input).graph);
    yes = report.balanced;
    rec.add("verdict", verdict(yes));
    for (const auto& v : report.violators) rec.add("violating_vertex", v);
  } else if (o.kind == "lattice") {
    auto in = open(o.input);
    const auto p = read_measure(in, o.input);
    yes = is_balanced(p);
    rec.add("verdict", verdict(yes));
    std::string m;
    for (const auto& x : mean(p)) m += (m.empty() ? "" : " ") + text::number(x, d);
    rec.add("mean", m);
  } else if (o.kind == "bistochastic") {
    auto in = open(o.input);
    yes = is_bistochastic(read_digraph(in, o.input, true).graph);
    rec.add("verdict", verdict(yes));
  } else if (o.kind == "homologous") {
    const auto c = load_complex(o);
    yes = in_d_lambda2(c, rates_to_field(load_rates(o, c)));
    rec.add("verdict", verdict(yes));
  } else if (o.kind == "elementary") {
    const auto c = load_complex(o);
    const auto r = load_rates(o, c);
    const auto v = in_Re(c, r);
    yes = v.yes;
    rec.add("verdict", verdict(yes));
    if (!yes) rec.add("reason", v.reason);
    if (v.witness_c) rec.add("witness_c", text::number(*v.witness_c, d));
    if (v.c_lo) rec.add("c_range", text::number(*v.c_lo, d) + " " + text::number(*v.c_hi, d));
    for (auto e : v.violating_edges) rec.add("violating_edge", c.edge_key(e));
    rec.add("trivial_necessary", in_d_lambda2(c, rates_to_field(r)) ? "holds" : "fails");
  } else if (o.kind == "diameter") {
    const auto c = load_complex(o);
    const auto b = sufficient_diameter_bound(c, load_rates(o, c));
    yes = b.sufficient;
    rec.add("verdict", verdict(yes));
    rec.add("M_bound", text::number(b.m_bound, d));
  } else {
    usage("unknown check '" + o.kind + "' (graph, lattice, bistochastic, homologous, elementary, diameter)");
  }
  rec.write(out, o.json);
  return yes ? kSuccess : kNegative;
}

// --- decompose --------------------------------------------------------------------

std::string stem(const std::string& path) {
  auto base = path.substr(path.find_last_of('/') + 1);
  base = base.substr(0, base.find('.'));
  return base.empty() ? "g" : base;
}

int decompose_elementary(const Options& o, std::ostream& out, std::ostream& err) {
  const auto c = load_complex(o);
  const auto r = load_rates(o, c);
  const auto dec = elementary_decompose(c, r, parse_optional(o.shift, "--shift"));
  auto cycles = to_graph_decomposition(c, dec);
  cycles.name = stem(o.input);
  const auto expected = rates_digraph(c, r);
  return emit(
      out, err, o,
      [&](std::ostream& s) {
        s << "# shift " << text::number(dec.shift, o.decimals) << '\n';
        if (o.periodic) {
          for (const auto& p : periodic_lift(c, dec)) {
            s << "# periodic " << p.cycle << " weight " << text::number(p.weight, o.decimals) << " " << p.scope << '\n';
          }
        }
        write_graph_decomposition(s, cycles, o.decimals);
      },
      [&](std::istream& in) { return read_graph_decomposition(in).reconstruct().edges() == expected.edges(); });
}

int decompose_1d_mode(const Options& o, std::ostream& out, std::ostream& err) {
  const auto c = load_complex(o, 1);
  if (!c.torus_shape() || c.torus_shape()->dimension != 1) usage("mode 1d needs a cycle (--torus N --dim 1)");
  const auto r = load_rates(o, c);
  const auto family = decompose_1d(c, r);
  const Rational a = parse_optional(o.a, "--a").value_or(Rational(0));
  const auto dec = family.at(a);
  GraphDecomposition cycles;
  cycles.name = stem(o.input);
  const auto n = c.edge_count();
  std::vector<Vertex> loop;
  for (Eigen::Index v = 0; v < n; ++v) loop.push_back(c.vertex_name(v));
  for (Eigen::Index e = 0; e < n; ++e) {
    if (dec.edge_weights(e).sign() > 0) {
      cycles.terms.push_back({GraphCycle({c.vertex_name(c.tail(e)), c.vertex_name(c.head(e))}), dec.edge_weights(e)});
    }
  }
  if (dec.plus.sign() > 0) cycles.terms.push_back({GraphCycle(loop), dec.plus});
  std::reverse(loop.begin(), loop.end());
  if (dec.minus.sign() > 0) cycles.terms.push_back({GraphCycle(loop), dec.minus});
  const auto expected = rates_digraph(c, r);
  return emit(
      out, err, o,
      [&](std::ostream& s) {
        s << "# flow " << text::number(family.flow(), o.decimals) << '\n';
        s << "# m " << text::number(family.m(), o.decimals) << '\n';
        s << "# a " << text::number(a, o.decimals) << '\n';
        s << "# trivial " << verdict(family.in_R_star()) << '\n';
        write_graph_decomposition(s, cycles, o.decimals);
      },
      [&](std::istream& in) { return read_graph_decomposition(in).reconstruct().edges() == expected.edges(); });
}

HeavyTailOracle1D tail_oracle(const std::string& spec) {
  const auto colon = spec.find(':');
  if (spec.substr(0, colon) != "inverse-square") usage("--tail expects inverse-square[:c_plus:c_minus]");
  Rational plus(1, 4), minus(1, 4);
  if (colon != std::string::npos) {
    const auto rest = spec.substr(colon + 1);
    const auto second = rest.find(':');
    if (second == std::string::npos) usage("--tail expects inverse-square[:c_plus:c_minus]");
    plus = *parse_optional(rest.substr(0, second), "--tail");
    minus = *parse_optional(rest.substr(second + 1), "--tail");
    if (plus.sign() <= 0 || minus.sign() <= 0) usage("--tail constants must be positive");
  }
  return {[plus, minus](std::int64_t x) {
    if (x == 0) return Rational(0);
    return (x > 0 ? plus : minus) / Rational(static_cast<long long>(x) * x);
  }};
}

int decompose_heavy(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.steps < 1) usage("--steps must be positive");
  const auto oracle = tail_oracle(o.tail);
  const auto steps = decompose_1d_heavy_tail(oracle, o.steps);
  LatticeDecomposition dec;
  dec.dimension = 1;
  for (const auto& s : steps) dec.terms.push_back({s.cycle, s.weight});
  return emit(
      out, err, o,
      [&](std::ostream& s) {
        s << "# tail " << o.tail << '\n';
        for (std::size_t l = 0; l < steps.size(); ++l) {
          s << "# step " << l + 1 << " x+ " << steps[l].x_plus << " x- " << steps[l].x_minus << " case "
            << (steps[l].case_a ? 'a' : 'b') << '\n';
        }
        write_decomposition(s, dec, o.decimals);
      },
      [&](std::istream& in) {
        // partial sums never exceed the law
        const LatticeMeasure sum = read_lattice_decomposition(in).reconstruct();
        for (const auto& [x, m] : sum.atoms()) {
          if (x[0] != 0 && m > oracle.mass_at(x[0])) return false;
        }
        return true;
      });
}

int decompose(const Options& o, std::ostream& out, std::ostream& err) {
  const int d = o.decimals;
  if (o.mode == "graph") {
    auto in = open(o.input);
    const auto g = read_digraph(in, o.input);
    const auto dec = decompose_graph(g.graph);
    auto named = dec;
    named.name = g.name;
    return emit(
        out, err, o, [&](std::ostream& s) { write_graph_decomposition(s, named, d); },
        [&](std::istream& back) { return read_graph_decomposition(back).reconstruct().edges() == g.graph.edges(); });
  }
  if (o.mode == "lattice") {
    auto in = open(o.input);
    const auto p = read_measure(in, o.input);
    const auto dec = decompose_lattice(p);
    return emit(
        out, err, o,
        [&](std::ostream& s) {
          if (o.periodic) {
            for (const auto& rec : periodic_lift(dec)) {
              s << "# periodic " << rec.cycle << " weight " << text::number(rec.weight, d) << " " << rec.scope << '\n';
            }
          }
          write_decomposition(s, dec, d);
        },
        [&](std::istream& back) { return read_lattice_decomposition(back).reconstruct() == p; });
  }
  if (o.mode == "birkhoff") {
    auto in = open(o.input);
    const auto g = read_digraph(in, o.input, true);
    const auto terms = birkhoff_decompose(g.graph);
    return emit(
        out, err, o, [&](std::ostream& s) { write_birkhoff(s, g.name, terms, d); },
        [&](std::istream& back) {
          WeightedDigraph sum(true);
          Rational total;
          for (const auto& t : read_birkhoff(back)) {
            total += t.weight;
            for (const auto& [u, v] : t.perm) sum.add_weight(u, v, t.weight);
          }
          return total == Rational(1) && sum.edges() == g.graph.edges();
        });
  }
  if (o.mode == "elementary") return decompose_elementary(o, out, err);
  if (o.mode == "1d") return decompose_1d_mode(o, out, err);
  if (o.mode == "1d-heavy") return decompose_heavy(o, out, err);
  usage("unknown mode '" + o.mode + "' (graph, lattice, birkhoff, elementary, 1d, 1d-heavy)");
}

// --- other subcommands ------------------------------------------------------------

int hodge(const Options& o, std::ostream& out) {
  const auto c = load_complex(o);
  if (!c.is_torus2()) usage("hodge needs a two-dimensional torus");
  auto in = open(o.input);
  const auto phi = read_field(in, c, o.input);
  const auto parts = hodge_decompose(c, phi);
  const auto [dim, n1, n2] = *c.torus_shape();
  out << "hodge " << n1 << 'x' << n2 << '\n';
  out << "harmonic_coefficients " << text::number(parts.c1, o.decimals) << ' ' << text::number(parts.c2, o.decimals)
      << '\n';
  const std::pair<const char*, const VectorField*> blocks[] = {
      {"gradient", &parts.gradient}, {"homologous", &parts.homologous}, {"harmonic", &parts.harmonic}};
  for (const auto& [name, field] : blocks) {
    for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
      if (!(*field)(e).is_zero()) out << name << ' ' << c.edge_key(e) << ' ' << text::number((*field)(e), o.decimals) << '\n';
    }
  }
  if (o.verify) {
    const bool ok = parts.gradient + parts.homologous + parts.harmonic == phi &&
                    inner(parts.gradient, parts.homologous).is_zero() && inner(parts.gradient, parts.harmonic).is_zero() &&
                    inner(parts.homologous, parts.harmonic).is_zero();
    if (!ok) return kNegative;
    out << "# verified exact\n";
  }
  return kSuccess;
}

int elementary(const Options& o, std::ostream& out) {
  const auto c = load_complex(o);
  const auto r = load_rates(o, c);
  const auto v = in_Re(c, r);
  Records rec;
  rec.add("verdict", verdict(v.yes));
  if (!v.yes) rec.add("reason", v.reason);
  if (v.witness_c) rec.add("witness_c", text::number(*v.witness_c, o.decimals));
  if (v.c_lo) rec.add("c_range", text::number(*v.c_lo, o.decimals) + " " + text::number(*v.c_hi, o.decimals));
  for (auto e : v.violating_edges) rec.add("violating_edge", c.edge_key(e));
  if (v.psi.size() == c.face_count() && c.face_count() > 0) {
    const auto sets = edge_intervals(c, v.psi);
    for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
      const auto& s = sets[static_cast<std::size_t>(e)];
      rec.add(s.complement ? "edge_complement" : "edge_interval",
              c.edge_key(e) + " : " + text::number(s.lo, o.decimals) + " " + text::number(s.hi, o.decimals) + " s " +
                  text::number(min(r.forward(e), r.backward(e)), o.decimals));
    }
  }
  rec.write(out, o.json);
  return v.yes ? kSuccess : kNegative;
}

int discretize(const Options& o, std::ostream& out) {
  if (o.potential.empty()) usage("--potential is required");
  const auto [n1, n2] = torus_size(o.torus.empty() ? std::string() : o.torus);
  const auto p = named_potential(o.potential);
  const auto c = TwoComplex::torus(n1, n2);
  const Eigen::Index s1 = o.grid_shift.empty() ? 0 : o.grid_shift[0];
  const Eigen::Index s2 = o.grid_shift.empty() ? 0 : o.grid_shift[1];
  out << "# potential " << o.potential << '\n';
  out << "# oscillation " << text::number(oscillation_bound(p, n1, n2), o.decimals) << '\n';
  if (o.chain) {
    write_chain(out, c, sample_faces(p, c, s1, s2), o.decimals);
  } else {
    write_field(out, c, discretize_potential(p, c, s1, s2), o.decimals);
  }
  return kSuccess;
}

int random_env(const Options& o, std::ostream& out) {
  if (o.potential.empty()) usage("--potential is required");
  if (o.torus.empty()) usage("--torus is required");
  const auto [n1, n2] = torus_size(o.torus);
  if (o.noise.size() != 2) usage("--noise expects two values a b");
  EnvironmentSpec spec;
  spec.potential = named_potential(o.potential, static_cast<double>(n1), static_cast<double>(n2));
  spec.a = *parse_optional(o.noise[0], "--noise");
  spec.b = *parse_optional(o.noise[1], "--noise");
  spec.seed = o.seed;
  spec.n1 = n1;
  spec.n2 = n2;
  spec.random_shift = !o.no_shift;
  out << "# potential " << o.potential << " seed " << o.seed << " noise " << spec.a.str() << ' ' << spec.b.str() << '\n';
  write_environment(out, random_environment(spec), o.decimals);
  return kSuccess;
}

void complex_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--torus", o.torus, "torus size N or N1xN2");
  cmd->add_option("--dim", o.dim, "torus dimension (1 or 2)")->each([&o](const std::string&) { o.dim_given = true; });
  cmd->add_option("--surface", o.surface, "surface complex file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact cycle decompositions of weighted graphs, lattice measures and torus fields", "cycdec"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--decimal", o.decimals, "append rounded decimals with k digits")->check(CLI::Range(0, 40));

  auto* chk = app.add_subcommand("check", "balance, boundary and elementary verdicts");
  chk->add_option("kind", o.kind, "graph | lattice | bistochastic | homologous | elementary | diameter")->required();
  chk->add_option("input", o.input, "input file")->required();
  chk->add_flag("--json", o.json, "one JSON document instead of line records");
  complex_flags(chk, o);

  auto* dec = app.add_subcommand("decompose", "write a decomposition");
  std::vector<std::string> positional;
  std::string mode_flag;
  dec->add_option("mode_and_input", positional, "[mode] input, mode one of graph | lattice | birkhoff | elementary | "
                                                "1d | 1d-heavy")->expected(0, 2);
  dec->add_option("--mode", mode_flag, "mode, instead of the first positional argument");
  dec->add_flag("--verify", o.verify, "re-read the output and check the reconstruction exactly");
  dec->add_flag("--periodic", o.periodic, "list the periodic classes as comments");
  dec->add_option("--shift", o.shift, "constant added to the face potential (elementary)");
  dec->add_option("--a", o.a, "family parameter (1d)");
  dec->add_option("--tail", o.tail, "inverse-square[:c_plus:c_minus] (1d-heavy)");
  dec->add_option("--steps", o.steps, "number of classes to emit (1d-heavy)");
  complex_flags(dec, o);

  auto* hod = app.add_subcommand("hodge", "gradient, boundary and harmonic parts of a field");
  hod->add_option("input", o.input, "field file")->required();
  hod->add_flag("--verify", o.verify, "check recomposition and orthogonality");
  complex_flags(hod, o);

  auto* ele = app.add_subcommand("elementary", "edge intervals and the elementary verdict");
  ele->add_option("input", o.input, "rates or field file")->required();
  ele->add_flag("--json", o.json, "one JSON document instead of line records");
  complex_flags(ele, o);

  auto* dis = app.add_subcommand("discretize", "boundary field of a sampled stream function");
  dis->add_option("--potential", o.potential, "zero | constant:C | sine[:A] | band:LO:HI[:H] | wave:K1:K2[:A]");
  dis->add_option("--torus", o.torus, "grid size N or N1xN2")->required();
  dis->add_option("--shift", o.grid_shift, "shift by whole faces: i j")->expected(2);
  dis->add_flag("--chain", o.chain, "write the face samples instead of the field");

  auto* env = app.add_subcommand("random-env", "periodic random environment with its certificate");
  env->add_option("--potential", o.potential, "stream function over one period");
  env->add_option("--torus", o.torus, "period N or N1xN2")->required();
  env->add_option("--noise", o.noise, "noise range a b")->expected(2);
  env->add_option("--seed", o.seed, "generator seed");
  env->add_flag("--no-shift", o.no_shift, "keep the potential unshifted");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  try {
    if (chk->parsed()) return check(o, out);
    if (dec->parsed()) {
      if (!mode_flag.empty()) {
        if (positional.size() > 1) usage("give the mode either positionally or with --mode");
        o.mode = mode_flag;
        if (!positional.empty()) o.input = positional[0];
      } else {
        if (positional.empty()) usage("decompose needs a mode");
        o.mode = positional[0];
        if (positional.size() > 1) o.input = positional[1];
      }
      return decompose(o, out, err);
    }
    if (hod->parsed()) return hodge(o, out);
    if (ele->parsed()) return elementary(o, out);
    if (dis->parsed()) return discretize(o, out);
    if (env->parsed()) return random_env(o, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.code());
  }
  return kInputError;
}

}  // namespace cycdec::cli
