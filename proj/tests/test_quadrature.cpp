#include <cmath>
#include <complex>
#include <random>

#include "decaylab/quadrature.hpp"
#include "doctest.h"

using namespace decaylab;
using C = std::complex<double>;

// Frozen reference values, fixed by the brute-force oracle (and confirmed
// against 30-digit quadrature) before the adaptive path was built.
namespace {
const C kGoldenTau1{0.18763731094541744, -0.93394655420023564};
const C kGoldenTau40{-0.038141080402465133, 0.032451286383508422};
const C kGoldenA2X2R2T10{0.13747400765204133, -0.015166641089349901};
}  // namespace

TEST_CASE("normalized density integrates to one at tau = 0") {
  QuadConfig cfg;
  for (double alpha : {0.0, 0.5, 2.0}) {
    for (double rho : {0.0, 2.0}) {
      const C v = integrate({make_toy_mdd({alpha, 1.0}), rho, 0.0}, cfg);
      CHECK(std::abs(v - 1.0) < 10.0 * cfg.rel_tol);
    }
  }
}

TEST_CASE("golden amplitude values") {
  QuadConfig cfg;
  const MddSpec toy01 = make_toy_mdd({0, 1});
  CHECK(std::abs(integrate({toy01, 0, 1}, cfg) - kGoldenTau1) < 1e-8);
  CHECK(std::abs(integrate({toy01, 0, 40}, cfg) - kGoldenTau40) < 1e-8);
  CHECK(std::abs(integrate({make_toy_mdd({2, 2}), 2, 10}, cfg) -
                 kGoldenA2X2R2T10) < 1e-8);
}

TEST_CASE("oracle agrees with the adaptive path") {
  QuadConfig cfg;
  const MddSpec toy01 = make_toy_mdd({0, 1});
  const OracleResult at_zero = oracle_integrate({toy01, 0, 0}, 1 << 10);
  CHECK(std::abs(at_zero.value - 1.0) <= at_zero.error_estimate + 1e-12);

  const OracleResult o = oracle_integrate({toy01, 0, 40}, 1 << 14);
  CHECK(std::abs(o.value - kGoldenTau40) < 1e-9);
  CHECK(std::abs(o.value - integrate({toy01, 0, 40}, cfg)) < 1e-7);

  // small lattice; the acceptance suite runs the full one
  for (double tau : {0.0, 7.5, 31.0}) {
    for (double rho : {0.0, 2.0}) {
      const C a = integrate({toy01, rho, tau}, cfg);
      const OracleResult r = oracle_integrate({toy01, rho, tau}, 1 << 12);
      CHECK(std::abs(a - r.value) < 1e-7);
    }
  }
}

TEST_CASE("real and imaginary parts are the cosine and minus-sine moments") {
  QuadConfig cfg;
  const MddSpec toy = make_toy_mdd({1, 1});
  for (double tau : {0.7, 5.0}) {
    for (double rho : {0.0, 1.0}) {
      const C a = integrate({toy, rho, tau}, cfg);
      auto eta = [&](double xi) { return std::sqrt(rho * rho + xi * xi); };
      const double re = density_integral(
          toy, [&](double xi) { return std::cos(eta(xi) * tau); }, cfg).value;
      const double im = density_integral(
          toy, [&](double xi) { return std::sin(eta(xi) * tau); }, cfg).value;
      CHECK(a.real() == doctest::Approx(re).epsilon(1e-9));
      CHECK(a.imag() == doctest::Approx(-im).epsilon(1e-9));
    }
  }
}

TEST_CASE("modulus never exceeds one") {
  QuadConfig cfg;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ua(0.0, 2.5), ux(0.6, 2.5),
      ut(0.0, 120.0), up(0.0, 3.0);
  for (int i = 0; i < 40; ++i) {
    const MddSpec toy = make_toy_mdd({ua(rng), ux(rng)});
    const C v = integrate({toy, up(rng), ut(rng)}, cfg);
    CHECK(std::abs(v) <= 1.0 + 10.0 * cfg.rel_tol);
  }
}

TEST_CASE("tightening the tolerance never worsens the oracle agreement") {
  const MddSpec toy = make_toy_mdd({0, 1});
  const OscIntegrand q{toy, 1.0, 25.0};
  const C ref = oracle_integrate(q, 1 << 16).value;
  double prev = 1.0;
  for (double tol : {1e-4, 1e-5, 1e-6, 1e-7, 1e-8, 1e-9, 1e-10}) {
    QuadConfig cfg;
    cfg.rel_tol = tol;
    const double err = std::abs(integrate(q, cfg) - ref);
    CHECK(err <= prev + 2e-14);  // slack for the machine floor
    prev = err;
  }
}

TEST_CASE("oracle refinement shrinks by at least the rule order") {
  const OscIntegrand q{make_toy_mdd({2, 2}), 2.0, 10.0};
  const double e1 = oracle_integrate(q, 1 << 11).error_estimate;
  const double e2 = oracle_integrate(q, 1 << 12).error_estimate;
  CHECK(e1 / e2 >= 8.0);  // composite Simpson is order 4
}

TEST_CASE("non-integer endpoint exponents go through the substitution") {
  QuadConfig cfg;
  for (double alpha : {0.5, 1.25, 2.75}) {
    const MddSpec toy = make_toy_mdd({alpha, 1.0});
    const OscIntegrand q{toy, 0.0, 20.0};
    const OracleResult o = oracle_integrate(q, 1 << 16);
    CHECK(std::abs(integrate(q, cfg) - o.value) <=
          3.0 * o.error_estimate + 1e-9);
  }
}

TEST_CASE("oracle mode reroutes integrate()") {
  QuadConfig cfg;
  cfg.mode = QuadConfig::Mode::oracle;
  cfg.oracle_panels = 1 << 12;
  const OscIntegrand q{make_toy_mdd({0, 1}), 0.0, 3.0};
  CHECK(integrate(q, cfg) == oracle_integrate(q, 1 << 12).value);
}

TEST_CASE("subdivision budget failure carries the best estimate") {
  QuadConfig cfg;
  cfg.max_subdivisions = 64;
  const OscIntegrand q{make_toy_mdd({0, 1}), 0.0, 80.0};
  try {
    integrate(q, cfg);
    FAIL("expected ToleranceNotMet");
  } catch (const ToleranceNotMet& e) {
    CHECK(e.achieved_error > 0.0);
    CHECK(std::abs(e.best_estimate) <= 1.0);
  }
}

TEST_CASE("configuration and input validation") {
  const MddSpec toy = make_toy_mdd({0, 1});
  QuadConfig bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate({toy, 0, 1}, bad), InvalidConfig);
  QuadConfig few;
  few.max_subdivisions = 8;
  CHECK_THROWS_AS(integrate({toy, 0, 1}, few), InvalidConfig);

  QuadConfig cfg;
  CHECK_THROWS_AS(integrate({toy, -1.0, 1.0}, cfg), InvalidParameter);
  CHECK_THROWS_AS(integrate({toy, 0.0, -1.0}, cfg), InvalidParameter);
  CHECK_THROWS_AS(oracle_integrate({toy, 0, 1}, 512), InvalidParameter);
}
