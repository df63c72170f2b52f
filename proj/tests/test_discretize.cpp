#include "doctest.h"

#include <numbers>
#include <sstream>

#include "cycdec/discretize.hpp"
#include "cycdec/error.hpp"
#include "generators.hpp"

using namespace cycdec;

namespace {

bool is_constant(const RVector& x) {
  return std::all_of(x.begin(), x.end(), [&](const Rational& v) { return v == x(0); });
}

std::string render(const Environment& env) {
  std::ostringstream out;
  write_environment(out, env);
  return out.str();
}

}  // namespace

TEST_CASE("discretized potentials are exact boundaries") {
  const auto zero = discretize_potential(named_potential("constant:2.5"), 5);
  CHECK(std::all_of(zero.begin(), zero.end(), [](const Rational& v) { return v.is_zero(); }));

  const auto sine = named_potential("sine");
  const auto c = TwoComplex::torus(8, 8);
  const auto phi = discretize_potential(sine, c);
  const auto psi = sample_faces(sine, c);
  CHECK(in_d_lambda2(c, phi));
  CHECK(boundary2(c, psi) == phi);
  CHECK(is_constant(recover_psi(c, phi, 5) - psi));
  CHECK(psi(c.face_at(1, 1)) == snap(std::sin(2 * std::numbers::pi * 1.5 / 8) * std::sin(2 * std::numbers::pi * 1.5 / 8), kSnapDenominator));

  // a vertical band gives the two-column field
  const auto t = TwoComplex::torus(10, 10);
  CHECK(discretize_potential(named_potential("band:0.3:0.7"), t) == testing::two_column_field(t, 3, 7));
  CHECK(sample_faces(named_potential("band:0.3:0.7"), t) == testing::band_chain(t, 3, 7));

  for (const char* spec : {"wave:1:2:0.7", "sine:3", "wave:0:1"}) {
    for (Eigen::Index n : {3, 4, 7}) {
      const auto cn = TwoComplex::torus(n, n + 1);
      const auto p = named_potential(spec);
      for (Eigen::Index k = 0; k < 3; ++k) {
        const auto f = discretize_potential(p, cn, k, 2 * k);
        CHECK(in_d_lambda2(cn, f));
        CHECK(boundary2(cn, sample_faces(p, cn, k, 2 * k)) == f);
      }
    }
  }
}

TEST_CASE("grid oscillation and the sufficient test") {
  CHECK(oscillation_bound(named_potential("zero"), 6).is_zero());
  CHECK(oscillation_bound(named_potential("band:0.3:0.7"), 10) == Rational(1));
  const auto sine = named_potential("sine");
  Rational lo = sine.face_value(0, 0, 8, 8), hi = lo;
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) {
      lo = min(lo, sine.face_value(i, j, 8, 8));
      hi = max(hi, sine.face_value(i, j, 8, 8));
    }
  }
  CHECK(oscillation_bound(sine, 8) == hi - lo);

  const auto band = named_potential("band:0.3:0.7");
  CHECK(check_re_sufficient(band, 10, Rational(1, 2)));
  CHECK_FALSE(check_re_sufficient(band, 10, Rational(1, 4)));
  CHECK(check_re_sufficient(named_potential("zero"), 10, Rational(0)));

  // sufficient implies membership for any symmetric part above s_min
  testing::Rng rng(41);
  for (const char* spec : {"sine", "wave:1:1:2", "band:0.2:0.5:3"}) {
    const auto p = named_potential(spec);
    const auto c = TwoComplex::torus(6, 6);
    const Rational s_min = oscillation_bound(p, 6) / Rational(2);
    REQUIRE(check_re_sufficient(p, 6, s_min));
    for (int t = 0; t < 5; ++t) {
      RVector s(c.edge_count());
      for (auto& v : s) v = s_min + testing::random_positive(rng, 3, 5) - Rational(1, 5);
      for (auto& v : s) v = max(v, s_min);
      CHECK(in_Re(c, field_to_rates(discretize_potential(p, c)) + symmetric_rates(s)).yes);
    }
  }
}

TEST_CASE("potential names") {
  CHECK_THROWS_WITH_AS(named_potential("gauss"), doctest::Contains("Parse"), Error);
  CHECK_THROWS_AS(named_potential("band:0.1"), Error);
  CHECK_THROWS_AS(named_potential("sine:x"), Error);
  CHECK_THROWS_AS(named_potential("zero:1"), Error);
  CHECK_THROWS_AS(named_potential("sine", 0.0), Error);
  // periods rescale the unit-square function
  const auto p = named_potential("band:0:0.5", 4.0, 4.0);
  CHECK(p.face_value(1, 0, 4, 4) == Rational(1));
  CHECK(p.face_value(2, 0, 4, 4) == Rational(0));
  CHECK(p.psi(5.0, 0.0) == 1.0);
}

TEST_CASE("random environment examples") {
  EnvironmentSpec spec{named_potential("zero", 4, 4), Rational(1), Rational(1), 7, 4, 4};
  const auto flat = random_environment(spec);
  for (const auto& row : flat.probabilities) {
    for (const auto& p : row) CHECK(p == Rational(1, 4));
  }
  CHECK(flat.certificate.yes);
  CHECK(flat.sufficient);

  EnvironmentSpec band{named_potential("band:0.3:0.7", 10, 10), Rational(1, 2), Rational(1, 2), 3, 10, 10};
  const auto half = random_environment(band);
  CHECK(half.sufficient);
  CHECK(half.certificate.yes);
  CHECK(half.oscillation == Rational(1));

  band.a = band.b = Rational(1, 100);
  const auto thin = random_environment(band);
  CHECK_FALSE(thin.sufficient);
  CHECK(thin.certificate.yes == in_Re(thin.torus, thin.weights).yes);
  CHECK_FALSE(thin.certificate.yes);

  band.b = Rational(1, 3);
  CHECK_THROWS_AS(random_environment(EnvironmentSpec{band.potential, Rational(0), Rational(1), 1, 5, 5}), Error);
  CHECK_THROWS_AS(random_environment(EnvironmentSpec{band.potential, Rational(1, 3), Rational(1, 3) + Rational(1, 10'000'000), 1, 5, 5}),
                  Error);
}

TEST_CASE("random environment properties") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    EnvironmentSpec spec{named_potential("sine:2", 6, 5), Rational(1, 10), Rational(3, 2), seed, 6, 5};
    const auto env = random_environment(spec);
    for (const auto& row : env.probabilities) {
      CHECK(row[0] + row[1] + row[2] + row[3] == Rational(1));
      for (const auto& p : row) CHECK(p.sign() > 0);
    }
    for (const auto& u : env.noise) {
      CHECK(u >= spec.a);
      CHECK(u <= spec.b);
    }
    CHECK(in_d_lambda2(env.torus, env.phi));
    if (env.sufficient) CHECK(env.certificate.yes);
    CHECK(render(random_environment(spec)) == render(env));
    spec.seed += 100;
    CHECK(render(random_environment(spec)) != render(env));
  }
  const auto text = render(random_environment({named_potential("zero", 3, 3), Rational(1), Rational(2), 1, 3, 3}));
  CHECK(text.find("0 0 : ") != std::string::npos);
  CHECK(text.find("# certificate yes") != std::string::npos);
}
