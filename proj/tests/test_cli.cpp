#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cycdec/cli.hpp"
#include "cycdec/complex.hpp"
#include "cycdec/finite_graph.hpp"
#include "generators.hpp"
#include "json.hpp"

using namespace cycdec;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / ("cycdec_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) const {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << content;
    return path;
  }

 private:
  fs::path dir_;
};

const char* kTriangle = "digraph tri\na b 1\nb c 1\nc a 1\nb a 2\nc b 2\na c 2\n";

}  // namespace

TEST_CASE("documented command lines") {
  Workspace ws;
  const auto tri = ws.file("triangle.wg", kTriangle);
  const auto r = run({"decompose", "graph", tri});
  CHECK(r.code == 0);
  CHECK(r.out == "digraph tri\ncycle 1/1 a b c\ncycle 2/1 a c b\n");

  std::ostringstream field;
  const auto t = TwoComplex::torus(10, 10);
  write_field(field, t, testing::two_column_field(t, 3, 7));
  const auto fig = ws.file("fig2.field", field.str());
  const auto e = run({"check", "elementary", fig, "--torus", "10"});
  CHECK(e.code == 1);
  CHECK(e.out.rfind("verdict no\n", 0) == 0);
  CHECK(e.out.find("reason PolyhedronViolated") != std::string::npos);

  const auto unb = ws.file("unbalanced.msr", "1 1/2\n2 1/2\n");
  const auto l = run({"decompose", "lattice", unb});
  CHECK(l.code == 1);
  CHECK(l.err.find("NotBalanced") != std::string::npos);
  CHECK(l.out.empty());
}

TEST_CASE("check verdicts") {
  Workspace ws;
  const auto tri = ws.file("triangle.wg", kTriangle);
  CHECK(run({"check", "graph", tri}).out == "verdict yes\n");
  const auto bad = run({"check", "graph", ws.file("path.wg", "digraph p\na b 1\n")});
  CHECK(bad.code == 1);
  CHECK(bad.out == "verdict no\nviolating_vertex a\nviolating_vertex b\n");

  const auto walk = ws.file("walk.msr", "1 0 1/4\n-1 0 1/4\n0 1 1/4\n0 -1 1/4\n");
  CHECK(run({"check", "lattice", walk}).out == "verdict yes\nmean 0/1 0/1\n");
  CHECK(run({"check", "bistochastic", ws.file("m.wg", "digraph m\na a 1/2\na b 1/2\nb a 1/2\nb b 1/2\n")}).code == 0);

  const auto sym = ws.file("sym.r", "rates\n0 0 h 1 1\n");
  const auto yes = run({"check", "elementary", sym, "--torus", "3"});
  CHECK(yes.code == 0);
  CHECK(yes.out.find("witness_c 0/1") != std::string::npos);
  const auto harmonic = ws.file("h.field", "field\n0 0 h 1\n1 0 h 1\n2 0 h 1\n");
  const auto nh = run({"check", "homologous", harmonic, "--torus", "3"});
  CHECK(nh.code == 1);
  const auto nh2 = run({"check", "elementary", harmonic, "--torus", "3"});
  CHECK(nh2.out.find("reason NotHomologous") != std::string::npos);
  CHECK(nh2.out.find("trivial_necessary fails") != std::string::npos);

  const auto face = ws.file("face.field", "field\n0 0 h 1\n1 0 v 1\n0 1 h -1\n0 0 v -1\n");
  const auto d = run({"check", "diameter", face, "--torus", "3"});
  CHECK(d.out.find("M_bound 1/1") != std::string::npos);
  CHECK(d.code == 1);

  const auto j = run({"check", "elementary", face, "--torus", "3", "--json"});
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["verdict"] == "yes");
  // face 0 is the base face, so every other face sits at -1
  CHECK(doc["witness_c"] == "1/1");
}

TEST_CASE("every decomposition mode verifies") {
  Workspace ws;
  const auto tri = ws.file("triangle.wg", kTriangle);
  const auto walk = ws.file("walk.msr", "1 0 1/4\n-1 0 1/4\n0 1 1/4\n0 -1 1/2\n0 2 1/8\n");
  const auto m = ws.file("m.wg", "digraph m\na b 1/3\na c 2/3\nb a 2/3\nb c 1/3\nc a 1/3\nc b 2/3\n");
  const auto face = ws.file("face.field", "field\n0 0 h 1\n1 0 v 1\n0 1 h -1\n0 0 v -1\n");
  const auto loop = ws.file("loop.r", "rates\n0 2 1\n1 2 1\n2 2 1\n3 2 1\n");
  const auto t4 = TwoComplex::torus(4, 4);
  std::ostringstream thick_text;
  write_rates(thick_text, t4,
              field_to_rates(boundary2(t4, indicator_face(t4, 0))) +
                  symmetric_rates(RVector::Constant(t4.edge_count(), Rational(1, 2))));
  const auto thick = ws.file("thick.r", thick_text.str());
  const std::vector<std::vector<std::string>> cases = {
      {"decompose", "graph", tri, "--verify"},
      {"decompose", "lattice", walk, "--verify", "--periodic"},
      {"decompose", "birkhoff", m, "--verify"},
      {"decompose", "elementary", face, "--torus", "4", "--verify", "--periodic"},
      {"decompose", "elementary", thick, "--torus", "4", "--shift", "1/2", "--verify"},
      {"decompose", "elementary", thick, "--torus", "4", "--shift", "3/2", "--verify"},
      {"decompose", "1d", loop, "--torus", "4", "--a", "1/2", "--verify"},
      {"decompose", "1d-heavy", "--steps", "12", "--tail", "inverse-square:1/3:1/5", "--verify"},
      {"decompose", "--mode", "graph", tri, "--verify"},
      {"hodge", face, "--torus", "3", "--verify"},
  };
  for (const auto& args : cases) {
    const auto r = run(args);
    INFO(args[1], " ", r.err);
    CHECK(r.code == 0);
    CHECK(r.out.find("# verified exact") != std::string::npos);
  }
  const auto one_d = run({"decompose", "1d", loop, "--torus", "4"});
  CHECK(one_d.out.find("# trivial no") != std::string::npos);
  CHECK(one_d.out.find("cycle 1/1 0 1 2 3") != std::string::npos);
  CHECK(run({"decompose", "1d", loop, "--torus", "4", "--a", "2"}).code == 1);
  CHECK(run({"decompose", "elementary", face, "--torus", "4", "--shift", "3"}).code == 1);

  // the elementary output is a graph decomposition of the rates
  const auto out = run({"decompose", "elementary", face, "--torus", "4"}).out;
  std::istringstream back(out);
  const auto dec = read_graph_decomposition(back);
  REQUIRE(dec.terms.size() == 1);
  CHECK(dec.terms[0].cycle.vertices() == std::vector<Vertex>{"0,0", "1,0", "1,1", "0,1"});
}

TEST_CASE("field tools") {
  Workspace ws;
  const auto f = run({"discretize", "--potential", "band:0.3:0.7", "--torus", "10"});
  CHECK(f.code == 0);
  const auto fig = ws.file("fig2.field", f.out);
  CHECK(run({"check", "homologous", fig, "--torus", "10"}).code == 0);
  CHECK(run({"check", "elementary", fig, "--torus", "10"}).code == 1);
  const auto chain = run({"discretize", "--potential", "band:0.3:0.7", "--torus", "10", "--chain"});
  CHECK(chain.out.find("chain\n3 0 1/1\n") != std::string::npos);

  const auto el = run({"elementary", fig, "--torus", "10"});
  CHECK(el.code == 1);
  CHECK(el.out.find("edge_interval 3 0 h : 1/1 1/1 s 0/1") != std::string::npos);
  const auto rp2 = [] {
    std::ostringstream s;
    write_complex(s, testing::projective_plane());
    return s.str();
  }();
  const auto surface = ws.file("rp2.cx", rp2);
  const auto zero = ws.file("zero.r", "rates\n0 1 1\n");
  const auto nonor = run({"elementary", zero, "--surface", surface});
  CHECK(nonor.code == 0);
  CHECK(nonor.out.find("edge_complement") != std::string::npos);
}

TEST_CASE("random environments are reproducible") {
  const std::vector<std::string> args = {"random-env", "--potential", "sine:0.5", "--torus", "5x4",
                                         "--noise",    "1/10",        "1",       "--seed",  "42"};
  const auto a = run(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == run(args).out);
  auto other = args;
  other.back() = "43";
  CHECK(run(other).out != a.out);
  CHECK(a.out.find("# certificate") != std::string::npos);
  std::istringstream lines(a.out);
  int rows = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    std::istringstream in(line);
    std::string x, y, colon, p;
    in >> x >> y >> colon;
    Rational sum;
    while (in >> p) sum += Rational::parse(p);
    CHECK(sum == Rational(1));
  }
  CHECK(rows == 20);
}

TEST_CASE("input errors exit with 2") {
  Workspace ws;
  const auto bad = run({"decompose", "graph", ws.file("bad.wg", "digraph g\na b x\n")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("bad.wg:2") != std::string::npos);
  CHECK(run({"decompose", "graph", ws.file("nohead.wg", "a b 1\n")}).code == 2);
  CHECK(run({"decompose", "graph", "/nonexistent/file.wg"}).code == 2);
  CHECK(run({"check", "elementary", ws.file("r", "rates\n0 0 h 1 1\n")}).code == 2);
  CHECK(run({"check", "elementary", ws.file("r2", "rates\n0 0 q 1 1\n"), "--torus", "3"}).code == 2);
  CHECK(run({"check", "elementary", ws.file("r3", "rates\n0 0 h -1 1\n"), "--torus", "3"}).code == 2);
  CHECK(run({"check", "homologous", ws.file("f", "field\n"), "--torus", "2"}).code == 2);
  CHECK(run({"check", "homologous", ws.file("f2", "field\n"), "--torus", "3x"}).code == 2);
  CHECK(run({"check", "homologous", ws.file("f3", "field\n"), "--surface", ws.file("s", "orientable maybe\n")}).code == 2);
  CHECK(run({"decompose", "sideways", "x"}).code == 2);
  CHECK(run({"decompose"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"random-env", "--potential", "gauss", "--torus", "3", "--noise", "1", "1"}).code == 2);
  CHECK(run({"random-env", "--potential", "zero", "--torus", "3", "--noise", "0", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("decimal output keeps exact values") {
  Workspace ws;
  const auto walk = ws.file("walk.msr", "1 1/3\n-1 1/3\n0 1/3\n");
  const auto r = run({"decompose", "lattice", walk, "--decimal", "3", "--verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("trivial 1/3~0.333") != std::string::npos);
}
