#include "cycdec/discretize.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "cycdec/error.hpp"
#include "cycdec/text_io.hpp"

namespace cycdec {

namespace {

double wrap(double u) { return u - std::floor(u); }

std::vector<double> parse_parameters(const std::string& spec, std::size_t first, std::size_t lo, std::size_t hi) {
  std::vector<double> out;
  std::string rest = first < spec.size() ? spec.substr(first) : "";
  std::istringstream in(rest);
  for (std::string tok; std::getline(in, tok, ':');) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tok.size() || !std::isfinite(v)) {
      throw Error(ErrorCode::Parse, "potential '" + spec + "': bad number '" + tok + "'");
    }
    out.push_back(v);
  }
  if (out.size() < lo || out.size() > hi) {
    throw Error(ErrorCode::Parse, "potential '" + spec + "': expected " + std::to_string(lo) + " to " +
                                      std::to_string(hi) + " parameters");
  }
  return out;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

mpz_class floor_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Eigen::Index wrap_index(Eigen::Index i, Eigen::Index n) { return ((i % n) + n) % n; }

}  // namespace

Rational PotentialSampler::face_value(Eigen::Index i, Eigen::Index j, Eigen::Index n1, Eigen::Index n2) const {
  const double u1 = period1 * (static_cast<double>(i) + 0.5) / static_cast<double>(n1);
  const double u2 = period2 * (static_cast<double>(j) + 0.5) / static_cast<double>(n2);
  return snap(psi(u1, u2), denominator);
}

PotentialSampler named_potential(const std::string& spec, double period1, double period2) {
  if (!(period1 > 0) || !(period2 > 0)) throw Error(ErrorCode::Contract, "periods must be positive");
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::size_t args = colon == std::string::npos ? spec.size() : colon + 1;
  constexpr double two_pi = 2 * std::numbers::pi;
  std::function<double(double, double)> unit;
  if (name == "zero") {
    parse_parameters(spec, args, 0, 0);
    unit = [](double, double) { return 0.0; };
  } else if (name == "constant") {
    const double c = parse_parameters(spec, args, 1, 1)[0];
    unit = [c](double, double) { return c; };
  } else if (name == "sine") {
    const auto p = parse_parameters(spec, args, 0, 1);
    const double a = p.empty() ? 1.0 : p[0];
    unit = [a, two_pi](double u1, double u2) { return a * std::sin(two_pi * u1) * std::sin(two_pi * u2); };
  } else if (name == "band") {
    const auto p = parse_parameters(spec, args, 2, 3);
    const double lo = p[0], hi = p[1], h = p.size() > 2 ? p[2] : 1.0;
    unit = [lo, hi, h](double u1, double) { return lo <= u1 && u1 < hi ? h : 0.0; };
  } else if (name == "wave") {
    const auto p = parse_parameters(spec, args, 2, 3);
    const double k1 = p[0], k2 = p[1], a = p.size() > 2 ? p[2] : 1.0;
    unit = [k1, k2, a, two_pi](double u1, double u2) { return a * std::sin(two_pi * (k1 * u1 + k2 * u2)); };
  } else {
    throw Error(ErrorCode::Parse, "unknown potential '" + name + "' (zero, constant, sine, band, wave)");
  }
  PotentialSampler out;
  out.period1 = period1;
  out.period2 = period2;
  out.psi = [unit, period1, period2](double u1, double u2) { return unit(wrap(u1 / period1), wrap(u2 / period2)); };
  return out;
}

TwoChain sample_faces(const PotentialSampler& p, const TwoComplex& torus, Eigen::Index shift1, Eigen::Index shift2) {
  if (!torus.is_torus2()) throw Error(ErrorCode::Contract, "sampling needs a two-dimensional torus");
  const auto [dim, n1, n2] = *torus.torus_shape();
  TwoChain out(torus.face_count());
  for (Eigen::Index j = 0; j < n2; ++j) {
    for (Eigen::Index i = 0; i < n1; ++i) {
      out(torus.face_at(i, j)) = p.face_value(wrap_index(i + shift1, n1), wrap_index(j + shift2, n2), n1, n2);
    }
  }
  return out;
}

VectorField discretize_potential(const PotentialSampler& p, const TwoComplex& torus, Eigen::Index shift1,
                                 Eigen::Index shift2) {
  const TwoChain psi = sample_faces(p, torus, shift1, shift2);
  const auto [dim, n1, n2] = *torus.torus_shape();
  auto at = [&](Eigen::Index i, Eigen::Index j) -> const Rational& {
    return psi(torus.face_at(wrap_index(i, n1), wrap_index(j, n2)));
  };
  VectorField phi(torus.edge_count());
  for (Eigen::Index j = 0; j < n2; ++j) {
    for (Eigen::Index i = 0; i < n1; ++i) {
      // flux across the dual segment of each edge: above minus below, left minus right
      phi(torus.horizontal_edge(i, j)) = at(i, j) - at(i, j - 1);
      phi(torus.vertical_edge(i, j)) = at(i - 1, j) - at(i, j);
    }
  }
  return phi;
}

VectorField discretize_potential(const PotentialSampler& p, Eigen::Index n) {
  return discretize_potential(p, TwoComplex::torus(n, n));
}

Rational oscillation_bound(const PotentialSampler& p, Eigen::Index n1, Eigen::Index n2) {
  if (n1 < 1 || n2 < 1) throw Error(ErrorCode::Contract, "grid must be nonempty");
  Rational lo = p.face_value(0, 0, n1, n2);
  Rational hi = lo;
  for (Eigen::Index j = 0; j < n2; ++j) {
    for (Eigen::Index i = 0; i < n1; ++i) {
      const Rational v = p.face_value(i, j, n1, n2);
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  return hi - lo;
}

Rational oscillation_bound(const PotentialSampler& p, Eigen::Index n) { return oscillation_bound(p, n, n); }

bool check_re_sufficient(const PotentialSampler& p, Eigen::Index n, const Rational& s_min) {
  return s_min >= oscillation_bound(p, n) / Rational(2);
}

Environment random_environment(const EnvironmentSpec& spec) {
  if (spec.a.sign() <= 0 || spec.b < spec.a) throw Error(ErrorCode::Contract, "noise range needs 0 < a <= b");
  Environment env{TwoComplex::torus(spec.n1, spec.n2), 0, 0, {}, {}, {}, {}, {}, false, {}};
  std::mt19937_64 rng(spec.seed);
  if (spec.random_shift) {
    env.shift1 = std::uniform_int_distribution<Eigen::Index>(0, spec.n1 - 1)(rng);
    env.shift2 = std::uniform_int_distribution<Eigen::Index>(0, spec.n2 - 1)(rng);
  }
  const TwoComplex& t = env.torus;
  env.phi = discretize_potential(spec.potential, t, env.shift1, env.shift2);

  const mpz_class d(static_cast<long>(spec.potential.denominator));
  const mpz_class k_lo = ceil_div(spec.a.numerator() * d, spec.a.denominator());
  const mpz_class k_hi = floor_div(spec.b.numerator() * d, spec.b.denominator());
  if (spec.a != spec.b && (k_lo > k_hi || !k_hi.fits_slong_p())) {
    throw Error(ErrorCode::Contract, "noise range holds no multiple of 1/" + d.get_str());
  }
  env.noise = RVector(t.edge_count());
  for (Eigen::Index e = 0; e < t.edge_count(); ++e) {
    if (spec.a == spec.b) {
      env.noise(e) = spec.a;
    } else {
      const long k = std::uniform_int_distribution<long>(k_lo.get_si(), k_hi.get_si())(rng);
      env.noise(e) = Rational(k, spec.potential.denominator);
    }
  }
  env.weights = field_to_rates(env.phi) + symmetric_rates(env.noise);

  env.probabilities.resize(static_cast<std::size_t>(t.vertex_count()));
  for (Eigen::Index j = 0; j < spec.n2; ++j) {
    for (Eigen::Index i = 0; i < spec.n1; ++i) {
      std::array<Rational, 4> w{env.weights.forward(t.horizontal_edge(i, j)),
                                env.weights.forward(t.vertical_edge(i, j)),
                                env.weights.backward(t.horizontal_edge(wrap_index(i - 1, spec.n1), j)),
                                env.weights.backward(t.vertical_edge(i, wrap_index(j - 1, spec.n2)))};
      const Rational z = w[0] + w[1] + w[2] + w[3];
      for (auto& x : w) x /= z;
      env.probabilities[static_cast<std::size_t>(t.vertex_at(i, j))] = std::move(w);
    }
  }
  env.oscillation = oscillation_bound(spec.potential, spec.n1, spec.n2);
  env.sufficient = spec.a >= env.oscillation / Rational(2);
  env.certificate = in_Re(t, env.weights);
  return env;
}

void write_environment(std::ostream& out, const Environment& env, int decimals) {
  const auto [dim, n1, n2] = *env.torus.torus_shape();
  out << "# environment " << n1 << 'x' << n2 << " shift " << env.shift1 << ' ' << env.shift2 << '\n';
  for (Eigen::Index j = 0; j < n2; ++j) {
    for (Eigen::Index i = 0; i < n1; ++i) {
      out << i << ' ' << j << " :";
      for (const auto& p : env.probabilities[static_cast<std::size_t>(env.torus.vertex_at(i, j))]) {
        out << ' ' << text::number(p, decimals);
      }
      out << '\n';
    }
  }
  out << "# oscillation " << text::number(env.oscillation, decimals) << '\n';
  out << "# sufficient " << (env.sufficient ? "yes" : "no") << '\n';
  out << "# certificate " << (env.certificate.yes ? "yes" : "no") << '\n';
  if (env.certificate.yes) {
    out << "# witness_c " << text::number(*env.certificate.witness_c, decimals) << '\n';
  } else {
    out << "# reason " << env.certificate.reason << '\n';
  }
}

}  // namespace cycdec
