#include "cycdec/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cycdec/error.hpp"
#include "cycdec/text_io.hpp"

namespace cycdec {

namespace {

bool is_origin(const IntPoint& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t c) { return c == 0; });
}

std::string point_str(const IntPoint& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(x[i]);
  }
  return s;
}

std::int64_t to_int64(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::TooLarge, std::string(what) + " does not fit in 64 bits");
  return z.get_si();
}

}  // namespace

// --- LatticeMeasure ---------------------------------------------------------

LatticeMeasure::LatticeMeasure(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw Error(ErrorCode::Contract, "lattice dimension must be positive");
}

LatticeMeasure LatticeMeasure::from_atoms(std::size_t dimension,
                                          const std::vector<std::pair<IntPoint, Rational>>& atoms) {
  LatticeMeasure p(dimension);
  for (const auto& [x, mass] : atoms) {
    if (x.size() != dimension) throw Error(ErrorCode::Contract, "atom " + point_str(x) + " has wrong dimension");
    if (mass.sign() < 0) throw Error(ErrorCode::Contract, "negative mass at " + point_str(x));
    if (p.atoms_.count(x)) throw Error(ErrorCode::Contract, "repeated atom " + point_str(x));
    if (mass.sign() > 0) p.atoms_.emplace(x, mass);
  }
  return p;
}

LatticeMeasure LatticeMeasure::dirac(std::size_t dimension) {
  LatticeMeasure p(dimension);
  p.atoms_.emplace(IntPoint(dimension, 0), Rational(1));
  return p;
}

Rational LatticeMeasure::mass(const IntPoint& x) const {
  const auto it = atoms_.find(x);
  return it == atoms_.end() ? Rational(0) : it->second;
}

Rational LatticeMeasure::total_mass() const {
  Rational total(0);
  for (const auto& [x, m] : atoms_) total += m;
  return total;
}

void LatticeMeasure::add(const IntPoint& x, const Rational& delta) {
  if (x.size() != dimension_) throw Error(ErrorCode::Contract, "atom has wrong dimension");
  Rational updated = mass(x) + delta;
  if (updated.sign() < 0) throw Error(ErrorCode::Contract, "mass at " + point_str(x) + " would become negative");
  if (updated.is_zero()) {
    atoms_.erase(x);
  } else {
    atoms_[x] = std::move(updated);
  }
}

std::vector<IntPoint> LatticeMeasure::jump_support() const {
  std::vector<IntPoint> out;
  for (const auto& [x, m] : atoms_) {
    if (!is_origin(x)) out.push_back(x);
  }
  return out;
}

// --- LatticeCycleClass --------------------------------------------------------

std::int64_t LatticeCycleClass::length() const {
  std::int64_t n = 0;
  for (const auto& [w, k] : entries) n += k;
  return n;
}

std::vector<IntPoint> LatticeCycleClass::vectors() const {
  std::vector<IntPoint> out;
  out.reserve(entries.size());
  for (const auto& [w, k] : entries) out.push_back(w);
  return out;
}

bool LatticeCycleClass::closes() const {
  if (entries.empty()) return false;
  IntPoint sum(entries.begin()->first.size(), 0);
  for (const auto& [w, k] : entries) {
    for (std::size_t i = 0; i < w.size(); ++i) sum[i] += k * w[i];
  }
  return is_origin(sum);
}

std::string LatticeCycleClass::str() const {
  std::string s;
  for (const auto& [w, k] : entries) {
    if (!s.empty()) s += ' ';
    s += point_str(w) + "*" + std::to_string(k);
  }
  return s;
}

LatticeMeasure LatticeDecomposition::reconstruct() const {
  LatticeMeasure p(dimension);
  if (trivial_mass.sign() > 0) p.add(IntPoint(dimension, 0), trivial_mass);
  for (const auto& term : terms) {
    const LatticeMeasure q = empirical_measure(term.cycle);
    for (const auto& [x, m] : q.atoms()) p.add(x, term.weight * m);
  }
  return p;
}

// --- operations -----------------------------------------------------------------

LatticeMeasure empirical_measure(const LatticeCycleClass& cycle) {
  if (cycle.entries.empty()) throw Error(ErrorCode::Contract, "empty cycle class");
  const std::size_t d = cycle.entries.begin()->first.size();
  const Rational total(cycle.length());
  LatticeMeasure q(d);
  for (const auto& [w, k] : cycle.entries) {
    if (k <= 0) throw Error(ErrorCode::Contract, "multiplicities must be positive");
    q.add(w, Rational(k) / total);
  }
  return q;
}

RVector mean(const LatticeMeasure& p) {
  RVector m = RVector::Zero(static_cast<Eigen::Index>(p.dimension()));
  for (const auto& [x, mass] : p.atoms()) {
    for (std::size_t i = 0; i < x.size(); ++i) m(static_cast<Eigen::Index>(i)) += mass * Rational(x[i]);
  }
  return m;
}

bool is_balanced(const LatticeMeasure& p) {
  const RVector m = mean(p);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!m(i).is_zero()) return false;
  }
  return true;
}

LatticeCycleClass irreducible_class(const std::vector<IntPoint>& points) {
  if (points.empty()) throw Error(ErrorCode::Contract, "irreducible_class: no points");
  const std::size_t d = points.front().size();
  for (const auto& w : points) {
    if (w.size() != d) throw Error(ErrorCode::Contract, "irreducible_class: dimension mismatch");
  }
  if (!affinely_independent(points)) {
    throw Error(ErrorCode::NotGeneralPosition, "difference vectors are linearly dependent");
  }
  const auto k = static_cast<Eigen::Index>(points.size());
  const auto rows = static_cast<Eigen::Index>(d + 1);
  RMatrix a(rows, k);
  RVector b = RVector::Zero(rows);
  b(rows - 1) = Rational(1);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (std::size_t i = 0; i < d; ++i) a(static_cast<Eigen::Index>(i), j) = Rational(points[static_cast<std::size_t>(j)][i]);
    a(rows - 1, j) = Rational(1);
  }
  const auto mu = solve_exact_linear(a, b);
  if (!mu) throw Error(ErrorCode::ZeroNotInterior, "origin is outside the affine hull");
  mpz_class common(1);
  for (Eigen::Index j = 0; j < k; ++j) {
    if ((*mu)(j).sign() <= 0) throw Error(ErrorCode::ZeroNotInterior, "origin is not in the relative interior");
    common = lcm(common, (*mu)(j).denominator());
  }
  LatticeCycleClass out;
  for (Eigen::Index j = 0; j < k; ++j) {
    const Rational n = (*mu)(j) * Rational(common);
    out.entries.emplace(points[static_cast<std::size_t>(j)], to_int64(n.numerator(), "multiplicity"));
  }
  return out;
}

namespace {

// Bit layout of the per-sum pattern mask: bit (empty + 2 * full).
struct HalfSums {
  std::map<IntPoint, unsigned> patterns;
};

HalfSums enumerate_half(const std::vector<std::pair<IntPoint, std::int64_t>>& half, std::size_t d) {
  HalfSums out;
  std::vector<std::int64_t> counts(half.size(), 0);
  IntPoint sum(d, 0);
  for (;;) {
    bool empty = true, full = true;
    for (std::size_t i = 0; i < half.size(); ++i) {
      if (counts[i] != 0) empty = false;
      if (counts[i] != half[i].second) full = false;
    }
    out.patterns[sum] |= 1u << ((empty ? 1 : 0) + (full ? 2 : 0));
    // odometer increment
    std::size_t i = 0;
    for (; i < half.size(); ++i) {
      if (counts[i] < half[i].second) {
        ++counts[i];
        for (std::size_t c = 0; c < d; ++c) sum[c] += half[i].first[c];
        break;
      }
      for (std::size_t c = 0; c < d; ++c) sum[c] -= counts[i] * half[i].first[c];
      counts[i] = 0;
    }
    if (i == half.size()) break;
  }
  return out;
}

}  // namespace

bool is_irreducible(const LatticeCycleClass& cycle, std::int64_t bound) {
  if (cycle.entries.empty()) throw Error(ErrorCode::Contract, "empty cycle class");
  if (cycle.length() > bound) {
    throw Error(ErrorCode::TooLarge, "cycle length " + std::to_string(cycle.length()) +
                                         " exceeds the exhaustive search bound " + std::to_string(bound));
  }
  const std::size_t d = cycle.entries.begin()->first.size();
  std::vector<std::pair<IntPoint, std::int64_t>> items(cycle.entries.begin(), cycle.entries.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::pair<IntPoint, std::int64_t>> left, right;
  double left_size = 1, right_size = 1;
  for (auto& item : items) {
    if (left_size <= right_size) {
      left_size *= static_cast<double>(item.second + 1);
      left.push_back(std::move(item));
    } else {
      right_size *= static_cast<double>(item.second + 1);
      right.push_back(std::move(item));
    }
  }
  const HalfSums left_sums = enumerate_half(left, d);
  const HalfSums right_sums = enumerate_half(right, d);
  for (const auto& [sum, right_mask] : right_sums.patterns) {
    IntPoint negated(sum);
    for (auto& c : negated) c = -c;
    const auto it = left_sums.patterns.find(negated);
    if (it == left_sums.patterns.end()) continue;
    for (unsigned pl = 0; pl < 4; ++pl) {
      if (!(it->second & (1u << pl))) continue;
      for (unsigned pr = 0; pr < 4; ++pr) {
        if (!(right_mask & (1u << pr))) continue;
        const bool empty = (pl & 1u) && (pr & 1u);
        const bool full = (pl & 2u) && (pr & 2u);
        if (!empty && !full) return false;
      }
    }
  }
  return true;
}

CaratheodoryStep caratheodory_step(const LatticeMeasure& p) {
  if (!is_balanced(p)) throw Error(ErrorCode::NotBalanced, "measure has nonzero mean");
  const std::vector<IntPoint> support = p.jump_support();
  if (support.empty()) throw Error(ErrorCode::Contract, "caratheodory_step: measure has no jumps");
  const auto vertex = barycentric_vertex(support, IntPoint(p.dimension(), 0));
  // a balanced measure has the origin in the hull of its jump support
  if (!vertex) throw Error(ErrorCode::NotBalanced, "origin outside the convex hull of the support");
  std::vector<IntPoint> simplex;
  for (std::size_t idx : vertex->support) simplex.push_back(support[idx]);

  CaratheodoryStep step{irreducible_class(simplex), Rational(0), p};
  const LatticeMeasure q = empirical_measure(step.cycle);
  bool first = true;
  for (const auto& [w, qw] : q.atoms()) {
    Rational ratio = p.mass(w) / qw;
    if (first || ratio < step.weight) step.weight = std::move(ratio);
    first = false;
  }
  for (const auto& [w, qw] : q.atoms()) step.residual.add(w, -(step.weight * qw));
  return step;
}

LatticeDecomposition decompose_lattice(const LatticeMeasure& p) {
  if (!is_balanced(p)) throw Error(ErrorCode::NotBalanced, "measure has nonzero mean");
  LatticeDecomposition dec;
  dec.dimension = p.dimension();
  dec.trivial_mass = p.mass(IntPoint(p.dimension(), 0));
  LatticeMeasure residual = p;
  while (!residual.jump_support().empty()) {
    CaratheodoryStep step = caratheodory_step(residual);
    dec.terms.push_back(LatticeTerm{std::move(step.cycle), std::move(step.weight)});
    residual = std::move(step.residual);
  }
  return dec;
}

// --- heavy tail -------------------------------------------------------------------

HeavyTailStream::HeavyTailStream(HeavyTailOracle1D oracle) : oracle_(std::move(oracle)) {
  if (!oracle_.mass_at) throw Error(ErrorCode::Contract, "heavy-tail oracle has no mass function");
}

Rational HeavyTailStream::emitted(std::int64_t x) const {
  const auto it = emitted_.find(x);
  return it == emitted_.end() ? Rational(0) : it->second;
}

Rational HeavyTailStream::residual(std::int64_t x) const {
  if (x == 0) return Rational(0);
  const Rational m = oracle_.mass_at(x);
  if (m.sign() < 0) throw Error(ErrorCode::Contract, "oracle returned a negative mass at " + std::to_string(x));
  return m - emitted(x);
}

const HeavyTailStep& HeavyTailStream::next() {
  while (residual(scan_plus_).sign() <= 0) {
    if (++scan_plus_ > oracle_.search_limit) {
      throw Error(ErrorCode::OracleExhausted, "no positive mass on the right within the search limit");
    }
  }
  while (residual(scan_minus_).sign() <= 0) {
    if (--scan_minus_ < -oracle_.search_limit) {
      throw Error(ErrorCode::OracleExhausted, "no positive mass on the left within the search limit");
    }
  }
  HeavyTailStep step;
  step.x_plus = scan_plus_;
  step.x_minus = scan_minus_;
  const Rational p_plus = residual(step.x_plus);
  const Rational p_minus = residual(step.x_minus);
  step.case_a = (p_plus * Rational(step.x_plus) + p_minus * Rational(step.x_minus)).sign() >= 0;

  // n+/n- = -x-/x+ in lowest terms
  const std::int64_t g = std::gcd(step.x_plus, -step.x_minus);
  const std::int64_t n_plus = -step.x_minus / g;
  const std::int64_t n_minus = step.x_plus / g;
  step.cycle.entries = {{IntPoint{step.x_plus}, n_plus}, {IntPoint{step.x_minus}, n_minus}};
  const Rational n_total(n_plus + n_minus);
  step.weight = step.case_a ? p_minus * n_total / Rational(n_minus) : p_plus * n_total / Rational(n_plus);

  emitted_[step.x_plus] += step.weight * Rational(n_plus) / n_total;
  emitted_[step.x_minus] += step.weight * Rational(n_minus) / n_total;
  steps_.push_back(std::move(step));
  return steps_.back();
}

std::vector<HeavyTailStep> decompose_1d_heavy_tail(const HeavyTailOracle1D& oracle, int steps) {
  if (steps <= 0) throw Error(ErrorCode::Contract, "step count must be positive");
  HeavyTailStream stream(oracle);
  for (int l = 0; l < steps; ++l) stream.next();
  return stream.steps();
}

// --- periodic lift ------------------------------------------------------------------

std::vector<PeriodicRecord> periodic_lift(const LatticeDecomposition& dec) {
  std::vector<PeriodicRecord> out;
  if (dec.trivial_mass.sign() > 0) {
    out.push_back(PeriodicRecord{"trivial " + point_str(IntPoint(dec.dimension, 0)), dec.trivial_mass});
  }
  for (const auto& term : dec.terms) out.push_back(PeriodicRecord{"class " + term.cycle.str(), term.weight});
  return out;
}

// --- text formats -------------------------------------------------------------------

LatticeMeasure read_measure(std::istream& in, std::string_view source) {
  const auto lines = text::read_lines(in);
  if (lines.empty()) text::fail(source, 0, "no atoms");
  const std::size_t d = lines.front().tokens.size() - 1;
  if (d == 0) text::fail(source, lines.front().number, "expected 'x1 ... xd mass'");
  LatticeMeasure p(d);
  std::map<IntPoint, std::size_t> seen;
  for (const auto& line : lines) {
    if (line.tokens.size() != d + 1) {
      text::fail(source, line.number, "expected " + std::to_string(d) + " coordinates and a mass");
    }
    IntPoint x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = text::parse_int(source, line, line.tokens[i]);
    const Rational mass = text::parse_rational(source, line, line.tokens[d]);
    if (mass.sign() < 0) text::fail(source, line.number, "negative mass");
    if (const auto [it, fresh] = seen.emplace(x, line.number); !fresh) {
      text::fail(source, line.number, "duplicate point " + point_str(x) + " (first on line " +
                                          std::to_string(it->second) + ")");
    }
    if (mass.sign() > 0) p.add(x, mass);
  }
  return p;
}

void write_measure(std::ostream& out, const LatticeMeasure& p, int decimals) {
  for (const auto& [x, m] : p.atoms()) {
    for (auto c : x) out << c << ' ';
    out << text::number(m, decimals) << '\n';
  }
}

void write_decomposition(std::ostream& out, const LatticeDecomposition& dec, int decimals) {
  out << "lattice " << dec.dimension << '\n';
  out << "trivial " << text::number(dec.trivial_mass, decimals) << '\n';
  for (const auto& term : dec.terms) {
    out << "class " << text::number(term.weight, decimals) << ' ' << term.cycle.str() << '\n';
  }
}

LatticeDecomposition read_lattice_decomposition(std::istream& in, std::string_view source) {
  const auto lines = text::read_lines(in);
  LatticeDecomposition dec;
  bool have_header = false;
  for (const auto& line : lines) {
    const std::string& head = line.tokens.front();
    if (head == "lattice" && line.tokens.size() == 2) {
      const auto d = text::parse_int(source, line, line.tokens[1]);
      if (d <= 0) text::fail(source, line.number, "dimension must be positive");
      dec.dimension = static_cast<std::size_t>(d);
      have_header = true;
    } else if (!have_header) {
      text::fail(source, line.number, "expected 'lattice <d>' header");
    } else if (head == "trivial" && line.tokens.size() == 2) {
      dec.trivial_mass = text::parse_rational(source, line, line.tokens[1]);
    } else if (head == "class" && line.tokens.size() >= 3) {
      LatticeTerm term{{}, text::parse_rational(source, line, line.tokens[1])};
      for (std::size_t t = 2; t < line.tokens.size(); ++t) {
        const std::string& tok = line.tokens[t];
        const auto star = tok.find('*');
        if (star == std::string::npos) text::fail(source, line.number, "expected 'x1,..,xd*n', got '" + tok + "'");
        IntPoint w;
        std::stringstream coords(tok.substr(0, star));
        for (std::string c; std::getline(coords, c, ',');) w.push_back(text::parse_int(source, line, c));
        if (w.size() != dec.dimension) text::fail(source, line.number, "vector '" + tok + "' has wrong dimension");
        const auto n = text::parse_int(source, line, tok.substr(star + 1));
        if (n <= 0) text::fail(source, line.number, "multiplicity must be positive");
        if (!term.cycle.entries.emplace(w, n).second) text::fail(source, line.number, "repeated vector in class");
      }
      dec.terms.push_back(std::move(term));
    } else {
      text::fail(source, line.number, "unrecognized record '" + head + "'");
    }
  }
  if (!have_header) text::fail(source, 0, "missing 'lattice <d>' header");
  return dec;
}

}  // namespace cycdec
