#include <cmath>
#include <random>

#include "decaylab/asymptotics.hpp"
#include "decaylab/scenario.hpp"
#include "doctest.h"

using namespace decaylab;

namespace {
constexpr double kPi = 3.14159265358979323846;

TwoMassState toy_state(double a1, double a2, double x1, double x2,
                       double w1 = 0.5) {
  return {make_toy_mdd({a1, x1}), make_toy_mdd({a2, x2}), w1, 1.0 - w1};
}
}  // namespace

TEST_CASE("chi factor") {
  CHECK(chi_factor(0.7, 0.0) == 1.0);
  CHECK(chi_factor(1.0, 2.0) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(chi_factor(2.0, 2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK_THROWS_AS(chi_factor(0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(chi_factor(1.0, -1.0), InvalidParameter);

  // strictly increasing in p
  double prev = chi_factor(1.3, 0.0);
  for (double p : {0.5, 1.0, 3.0, 8.0}) {
    const double cur = chi_factor(1.3, p);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("short-time coefficient of a single-mass state") {
  // both members identical, so pi_bar0 equals the single-mass value
  const auto st = short_time(toy_state(0, 0, 1, 1), 0.0);
  CHECK(st.a_bar1 == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(st.a_bar0 == doctest::Approx(1.3789360780706561).epsilon(1e-10));
  CHECK(st.pi_bar0 ==
        doctest::Approx(0.09853529259511756).epsilon(1e-8));
}

TEST_CASE("short-time coefficient is nonnegative") {
  std::mt19937_64 rng(5150);
  std::uniform_real_distribution<double> ua(0.0, 2.0), ux(0.6, 2.2),
      uw(0.1, 0.9), up(0.0, 4.0);
  for (int i = 0; i < 15; ++i) {
    const auto st =
        short_time(toy_state(ua(rng), ua(rng), ux(rng), ux(rng), uw(rng)),
                   up(rng));
    CHECK(st.pi_bar0 >= -1e-12);
  }
}

TEST_CASE("regime classification covers every sign combination") {
  auto regime_of = [](double a1, double a2, double x1, double x2) {
    return long_time(toy_state(a1, a2, x1, x2), 1.0).regime;
  };
  // alpha relation x mu relation
  CHECK(regime_of(0, 2, 1, 2) == Regime::PowerLawDistinctAlpha);
  CHECK(regime_of(0, 2, 2, 1) == Regime::PowerLawDistinctAlpha);
  CHECK(regime_of(0, 2, 1, 1) == Regime::PowerLawDistinctAlpha);
  CHECK(regime_of(2, 0, 1, 2) == Regime::PowerLawDistinctAlpha);
  CHECK(regime_of(2, 0, 2, 1) == Regime::PowerLawDistinctAlpha);
  CHECK(regime_of(2, 0, 1, 1) == Regime::PowerLawDistinctAlpha);
  CHECK(regime_of(1, 1, 1, 2) == Regime::DampedOscillation);
  CHECK(regime_of(1, 1, 2, 1) == Regime::DampedOscillation);
  CHECK(regime_of(1, 1, 1, 1) == Regime::PowerLawEqualAlphaEqualBound);
}

TEST_CASE("long-time coefficients at the figure presets") {
  SUBCASE("fig-6 power-law prefactor") {
    const AsymptoticModel m = long_time(toy_state(0, 2, 1, 2), 0.0);
    CHECK(m.P_pl == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.pl_exponent == doctest::Approx(2.0));
    CHECK(m.c0[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(m.c0[1] == doctest::Approx(64.0).epsilon(1e-12));
  }

  SUBCASE("equal-exponent oscillation frequency and period") {
    const AsymptoticModel m2 = long_time(toy_state(1, 1, 1, 2), 2.0);
    CHECK(m2.regime == Regime::DampedOscillation);
    CHECK(m2.varpi == doctest::Approx(0.5923591472464004).epsilon(1e-12));
    CHECK(m2.period == doctest::Approx(10.607053738238306).epsilon(1e-12));
    const AsymptoticModel m1 = long_time(toy_state(1, 1, 1, 2), 1.0);
    CHECK(m1.period == doctest::Approx(7.6451317794660618).epsilon(1e-12));
  }

  SUBCASE("equal exponents and bounds collapse to one power law") {
    const AsymptoticModel m = long_time(toy_state(1, 1, 1, 1), 0.0);
    CHECK(m.regime == Regime::PowerLawEqualAlphaEqualBound);
    CHECK(m.P_pl == doctest::Approx(16.0).epsilon(1e-12));  // (w1 c0 + w2 c0)^2
    CHECK(m.varpi == 0.0);
    CHECK(std::isinf(m.period));
  }
}

TEST_CASE("index relabeling preserves the predictor") {
  const AsymptoticModel plain = long_time(toy_state(0, 2, 1, 2), 1.5);
  const AsymptoticModel swapped = long_time(toy_state(2, 0, 2, 1), 1.5);
  CHECK(!plain.swapped);
  CHECK(swapped.swapped);
  CHECK(swapped.alpha[0] == plain.alpha[0]);
  for (double tau : {5.0, 20.0, 80.0})
    CHECK(swapped.predict(tau) ==
          doctest::Approx(plain.predict(tau)).epsilon(1e-14));
}

TEST_CASE("period-ratio identity against the weighted mean") {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> umu(0.5, 4.0), up(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double mu1 = umu(rng), mu2 = umu(rng), p = up(rng);
    if (mu1 == mu2) continue;
    const double ratio = (mu2 - mu1) / varpi_value(mu1, mu2, p);
    const double weighted =
        (mu1 * chi_factor(mu1, p) + mu2 * chi_factor(mu2, p)) / (mu1 + mu2);
    CHECK(std::abs(ratio - weighted) < 1e-12);
  }
}

TEST_CASE("term dominance ordering for distinct exponents") {
  std::mt19937_64 rng(8080);
  std::uniform_real_distribution<double> ux(0.6, 2.5), up(0.0, 3.0);
  for (int i = 0; i < 10; ++i) {
    const AsymptoticModel m =
        long_time(toy_state(0, 2, ux(rng), ux(rng)), up(rng));
    for (double tau : {1e3, 1e4}) {
      const double lead = m.pl_term[0] * std::pow(tau, -m.pl_exponent);
      const double cross = std::abs(2.0 * m.P_osc *
                                    std::pow(tau, -m.osc_exponent));
      const double sub =
          m.pl_term[1] * std::pow(tau, -2.0 * (1.0 + m.alpha[1]));
      CHECK(lead > cross);
      CHECK(cross > sub);
    }
  }
}

TEST_CASE("dilation map") {
  const AsymptoticModel osc = long_time(toy_state(1, 1, 1, 2), 2.0);
  const DilationMap at_rest = dilation_map(osc, 0.0, 0.0);
  CHECK(at_rest.period_ratio_rest == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(at_rest.period_ratio_prime == doctest::Approx(1.0).epsilon(1e-14));

  const DilationMap map = dilation_map(osc, 2.0, 0.0);
  const double expected = (std::sqrt(5.0) + 2.0 * std::sqrt(2.0)) / 3.0;
  CHECK(map.period_ratio_rest == doctest::Approx(expected).epsilon(1e-13));
  CHECK(map.period_ratio_rest ==
        doctest::Approx(1.0 / osc.varpi).epsilon(1e-12));  // varpi_0 = 1
  CHECK(!map.chi_pk.has_value());
  CHECK_THROWS_AS(chi_scaling_factor(osc, 2.0), RegimeMismatch);

  const AsymptoticModel pl = long_time(toy_state(0, 2, 1, 2), 2.0);
  const DilationMap plmap = dilation_map(pl, 2.0, 1.0);
  CHECK(*plmap.chi_pk == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(*plmap.chi_ratio ==
        doctest::Approx(std::sqrt(5.0) / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(*plmap.chi_ratio > 1.0);  // dilation whenever p > p'
}

TEST_CASE("nonrelativistic and ultrarelativistic limits") {
  const TwoMassState state = toy_state(1, 1, 1, 2);

  const LimitModels at_rest = limits(state, 0.0);
  CHECK(at_rest.nonrelativistic.chi[0] == 1.0);
  CHECK(at_rest.nonrelativistic.chi[1] == 1.0);
  CHECK(at_rest.nonrelativistic.period ==
        doctest::Approx(2.0 * kPi).epsilon(1e-13));
  CHECK(!at_rest.ultrarelativistic.has_value());

  const LimitModels fast = limits(state, 100.0);
  const UltraRelApprox& ur = *fast.ultrarelativistic;
  const AsymptoticModel exact = long_time(state, 100.0);
  CHECK(std::abs(ur.chi[0] - exact.chi[0]) / exact.chi[0] < 1e-4);
  CHECK(ur.varpi == 0.0);  // frequency vanishes in the limit

  const double t_ratio = dilation_map(exact, 100.0, 0.0).period_ratio_rest;
  CHECK(t_ratio == doctest::Approx(66.67499929180205).epsilon(1e-12));
  CHECK(t_ratio > 50.0);
}

TEST_CASE("long-time amplitude form") {
  const MddSpec toy = make_toy_mdd({0, 1});

  SUBCASE("modulus identity") {
    for (double tau : {10.0, 50.0}) {
      for (double p : {0.0, 2.0}) {
        const double c0 = endpoint_constant(toy);
        const double chi = chi_factor(toy.xi0, p);
        CHECK(std::abs(long_time_amplitude(toy, p, tau)) ==
              doctest::Approx(c0 * std::pow(chi / tau, 1.0 + toy.alpha))
                  .epsilon(1e-14));
      }
    }
  }

  SUBCASE("matches the numerical amplitude at large tau") {
    QuadConfig cfg;
    const std::complex<double> numeric = amp_single(toy, 0, 50, cfg);
    const std::complex<double> asym = long_time_amplitude(toy, 0, 50);
    CHECK(std::abs(numeric - asym) / std::abs(asym) < 0.05);
  }

  SUBCASE("phase difference reproduces the cross-term phase") {
    const MddSpec toy2 = make_toy_mdd({2, 2});
    const double p = 2.0, tau = 30.0;
    const auto a1 = long_time_amplitude(toy, p, tau);
    const auto a2 = long_time_amplitude(toy2, p, tau);
    const AsymptoticModel m = long_time({toy, toy2, 0.5, 0.5}, p);
    const double expected = m.phase_offset + m.varpi * tau;
    const double got = std::arg(a1 * std::conj(a2));
    CHECK(std::cos(got) == doctest::Approx(std::cos(expected)).epsilon(1e-10));
    CHECK(std::sin(got) == doctest::Approx(std::sin(expected)).epsilon(1e-10));
  }
}

TEST_CASE("predictor tracks the numerics inside the oscillation envelope") {
  QuadConfig cfg;
  struct Case {
    PresetCurve curve;
  };
  for (const PresetCurve curve :
       {PresetCurve{"fig6c", 0, 2, 1, 2, 0}, PresetCurve{"fig7d", 1, 2, 1, 1, 0},
        PresetCurve{"fig8a", 1, 1, 1, 2, 0}}) {
    const TwoMassState state = build_state(curve, cfg);
    const AsymptoticModel m = long_time(state, curve.p);
    for (double tau : {50.0, 75.0, 100.0}) {
      const double prob = prob_two(state, curve.p, tau, cfg);
      CHECK(prob <= 1.1 * m.envelope_max(tau));
      CHECK(prob >= 0.9 * m.envelope_min(tau));
    }
  }
}

TEST_CASE("model report carries the key fields") {
  const std::string rep = long_time(toy_state(1, 1, 1, 2), 2.0).report();
  CHECK(rep.find("regime = damped-oscillation") != std::string::npos);
  CHECK(rep.find("period = 10.607053738238") != std::string::npos);
  CHECK(rep.find("varpi = ") != std::string::npos);
}
