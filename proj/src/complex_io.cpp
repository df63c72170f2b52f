#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

#include "cycdec/complex.hpp"
#include "cycdec/error.hpp"
#include "cycdec/text_io.hpp"

namespace cycdec {

namespace {

// Number of leading tokens naming an edge.
std::size_t edge_key_width(const TwoComplex& c) { return c.is_torus2() ? 3 : 1; }
std::size_t face_key_width(const TwoComplex& c) { return c.is_torus2() ? 2 : 1; }

Eigen::Index coordinate(std::string_view source, const text::Line& line, const std::string& tok, Eigen::Index n) {
  const auto x = text::parse_int(source, line, tok);
  if (x < 0 || x >= n) text::fail(source, line.number, "coordinate " + tok + " outside 0.." + std::to_string(n - 1));
  return static_cast<Eigen::Index>(x);
}

Eigen::Index parse_edge(std::string_view source, const text::Line& line, const TwoComplex& c) {
  const auto& t = line.tokens;
  if (c.is_torus2()) {
    const Eigen::Index i = coordinate(source, line, t[0], c.torus_shape()->n1);
    const Eigen::Index j = coordinate(source, line, t[1], c.torus_shape()->n2);
    if (t[2] == "h") return c.horizontal_edge(i, j);
    if (t[2] == "v") return c.vertical_edge(i, j);
    text::fail(source, line.number, "edge direction must be 'h' or 'v', got '" + t[2] + "'");
  }
  return coordinate(source, line, t[0], c.edge_count());
}

Eigen::Index parse_face(std::string_view source, const text::Line& line, const TwoComplex& c) {
  const auto& t = line.tokens;
  if (c.is_torus2()) {
    return c.face_at(coordinate(source, line, t[0], c.torus_shape()->n1),
                     coordinate(source, line, t[1], c.torus_shape()->n2));
  }
  return coordinate(source, line, t[0], c.face_count());
}

void expect_header(std::string_view source, const std::vector<text::Line>& lines, const std::string& header) {
  if (lines.empty() || lines.front().tokens.size() != 1 || lines.front().tokens.front() != header) {
    text::fail(source, lines.empty() ? 0 : lines.front().number, "expected '" + header + "' header");
  }
}

// Reads "<key> v1 .. vk" records into k vectors indexed by cell.
template <typename ParseKey>
std::vector<RVector> read_records(std::string_view source, const std::vector<text::Line>& lines, std::size_t key_width,
                                  std::size_t values, Eigen::Index cells, ParseKey parse_key) {
  std::vector<RVector> out(values, RVector::Zero(cells));
  std::map<Eigen::Index, std::size_t> seen;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& line = lines[l];
    if (line.tokens.size() != key_width + values) {
      text::fail(source, line.number, "expected " + std::to_string(key_width) + " key token(s) and " +
                                          std::to_string(values) + " value(s)");
    }
    const Eigen::Index cell = parse_key(line);
    if (const auto [it, fresh] = seen.emplace(cell, line.number); !fresh) {
      text::fail(source, line.number, "cell listed twice (first on line " + std::to_string(it->second) + ")");
    }
    for (std::size_t k = 0; k < values; ++k) out[k](cell) = text::parse_rational(source, line, line.tokens[key_width + k]);
  }
  return out;
}

}  // namespace

TwoComplex read_complex(std::istream& in, std::string_view source) {
  const auto lines = text::read_lines(in);
  std::optional<bool> orientable;
  std::vector<std::string> names;
  std::map<std::string, Eigen::Index> index;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  std::vector<std::vector<SignedEdge>> faces;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t[0] == "orientable" && t.size() == 2) {
      if (orientable) text::fail(source, line.number, "orientable given twice");
      if (t[1] != "yes" && t[1] != "no") text::fail(source, line.number, "expected 'orientable yes|no'");
      orientable = t[1] == "yes";
    } else if (t[0] == "vertex" && t.size() == 2) {
      if (!index.emplace(t[1], static_cast<Eigen::Index>(names.size())).second) {
        text::fail(source, line.number, "vertex '" + t[1] + "' declared twice");
      }
      names.push_back(t[1]);
    } else if (t[0] == "edge" && t.size() == 3) {
      const auto u = index.find(t[1]);
      const auto v = index.find(t[2]);
      if (u == index.end() || v == index.end()) text::fail(source, line.number, "edge uses an undeclared vertex");
      edges.emplace_back(u->second, v->second);
    } else if (t[0] == "face" && t.size() >= 2) {
      std::vector<SignedEdge> sides;
      for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k].size() < 2 || (t[k][0] != '+' && t[k][0] != '-')) {
          text::fail(source, line.number, "face sides are signed edge indices like +3 or -0, got '" + t[k] + "'");
        }
        const auto e = text::parse_int(source, line, t[k].substr(1));
        if (e < 0 || e >= static_cast<std::int64_t>(edges.size())) {
          text::fail(source, line.number, "face uses edge " + t[k].substr(1) + " before it is declared");
        }
        sides.push_back({static_cast<Eigen::Index>(e), t[k][0] == '+' ? 1 : -1});
      }
      faces.push_back(std::move(sides));
    } else {
      text::fail(source, line.number, "unrecognized record '" + t[0] + "'");
    }
  }
  if (!orientable) text::fail(source, 0, "missing 'orientable yes|no'");
  try {
    return TwoComplex::surface(std::move(names), std::move(edges), std::move(faces), *orientable);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvalidComplex) throw;
    const std::string what = e.what();
    throw Error(ErrorCode::InvalidComplex, std::string(source) + ": " + what.substr(what.find(": ") + 2));
  }
}

void write_complex(std::ostream& out, const TwoComplex& c) {
  out << "orientable " << (c.orientable() ? "yes" : "no") << '\n';
  for (Eigen::Index v = 0; v < c.vertex_count(); ++v) out << "vertex " << c.vertex_name(v) << '\n';
  for (Eigen::Index e = 0; e < c.edge_count(); ++e) {
    out << "edge " << c.vertex_name(c.tail(e)) << ' ' << c.vertex_name(c.head(e)) << '\n';
  }
  for (Eigen::Index f = 0; f < c.face_count(); ++f) {
    out << "face";
    for (const auto& s : c.face(f)) out << ' ' << (s.sign > 0 ? '+' : '-') << s.edge;
    out << '\n';
  }
}

VectorField read_field(std::istream& in, const TwoComplex& c, std::string_view source) {
  const auto lines = text::read_lines(in);
  expect_header(source, lines, "field");
  return read_records(source, lines, edge_key_width(c), 1, c.edge_count(),
                      [&](const text::Line& l) { return parse_edge(source, l, c); })[0];
}

EdgeRates read_rates(std::istream& in, const TwoComplex& c, std::string_view source) {
  const auto lines = text::read_lines(in);
  expect_header(source, lines, "rates");
  auto v = read_records(source, lines, edge_key_width(c), 2, c.edge_count(),
                        [&](const text::Line& l) { return parse_edge(source, l, c); });
  for (std::size_t l = 1; l < lines.size(); ++l) {
    for (std::size_t k = edge_key_width(c); k < lines[l].tokens.size(); ++k) {
      if (text::parse_rational(source, lines[l], lines[l].tokens[k]).sign() < 0) {
        text::fail(source, lines[l].number, "rates must be nonnegative");
      }
    }
  }
  return {std::move(v[0]), std::move(v[1])};
}

TwoChain read_chain(std::istream& in, const TwoComplex& c, std::string_view source) {
  const auto lines = text::read_lines(in);
  expect_header(source, lines, "chain");
  return read_records(source, lines, face_key_width(c), 1, c.face_count(),
                      [&](const text::Line& l) { return parse_face(source, l, c); })[0];
}

void write_field(std::ostream& out, const TwoComplex& c, const VectorField& phi, int decimals, bool skip_zero) {
  out << "field\n";
  for (Eigen::Index e = 0; e < phi.size(); ++e) {
    if (skip_zero && phi(e).is_zero()) continue;
    out << c.edge_key(e) << ' ' << text::number(phi(e), decimals) << '\n';
  }
}

void write_rates(std::ostream& out, const TwoComplex& c, const EdgeRates& r, int decimals) {
  out << "rates\n";
  for (Eigen::Index e = 0; e < r.forward.size(); ++e) {
    if (r.forward(e).is_zero() && r.backward(e).is_zero()) continue;
    out << c.edge_key(e) << ' ' << text::number(r.forward(e), decimals) << ' ' << text::number(r.backward(e), decimals)
        << '\n';
  }
}

void write_chain(std::ostream& out, const TwoComplex& c, const TwoChain& psi, int decimals) {
  out << "chain\n";
  for (Eigen::Index f = 0; f < psi.size(); ++f) {
    if (psi(f).is_zero()) continue;
    out << c.face_key(f) << ' ' << text::number(psi(f), decimals) << '\n';
  }
}

EdgeRates read_rates_or_field(std::istream& in, const TwoComplex& c, std::string_view source) {
  std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::istringstream probe(all);
  const auto lines = text::read_lines(probe);
  std::istringstream again(all);
  if (!lines.empty() && lines.front().tokens.size() == 1 && lines.front().tokens[0] == "field") {
    return field_to_rates(read_field(again, c, source));
  }
  return read_rates(again, c, source);
}

}  // namespace cycdec
