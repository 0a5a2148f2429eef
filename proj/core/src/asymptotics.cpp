#include "decaylab/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "decaylab/mdd.hpp"

namespace decaylab {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool same(double a, double b) { return a == b; }

std::array<double, 3> a_coefficients(const MddSpec& mdd, double p) {
  return {moment(mdd, p, 0.5), 0.5 * moment(mdd, p, 1.0),
          moment(mdd, p, 1.5) / 6.0};
}

void put(std::ostringstream& os, const char* key, double value) {
  os << key << " = ";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  os << buf << "\n";
}

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::PowerLawDistinctAlpha: return "power-law-distinct-alpha";
    case Regime::PowerLawEqualAlphaEqualBound:
      return "power-law-equal-alpha-equal-bound";
    case Regime::DampedOscillation: return "damped-oscillation";
  }
  return "unknown";
}

double chi_factor(double mu0, double p) {
  if (!(mu0 > 0.0))
    throw InvalidParameter("chi factor needs a positive lower bound");
  if (!(p >= 0.0)) throw InvalidParameter("chi factor needs p >= 0");
  return std::sqrt(1.0 + (p / mu0) * (p / mu0));
}

double varpi_value(double mu1, double mu2, double p) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0))
    throw InvalidParameter("varpi needs positive lower bounds");
  if (!(p >= 0.0)) throw InvalidParameter("varpi needs p >= 0");
  // cancellation-free form of μ₂χ₂ − μ₁χ₁ (μχ = √(μ²+p²))
  const double e1 = std::hypot(mu1, p);
  const double e2 = std::hypot(mu2, p);
  return (mu2 - mu1) * (mu2 + mu1) / (e1 + e2);
}

ShortTimeCoefficients short_time(const TwoMassState& state, double p) {
  state.validate();
  ShortTimeCoefficients out;
  out.a[0] = a_coefficients(state.mdd1, p);
  out.a[1] = a_coefficients(state.mdd2, p);
  out.a_bar0 = state.w1 * out.a[0][0] + state.w2 * out.a[1][0];
  out.a_bar1 = state.w1 * out.a[0][1] + state.w2 * out.a[1][1];
  out.pi_bar0 = 2.0 * out.a_bar1 - out.a_bar0 * out.a_bar0;
  return out;
}

AsymptoticModel long_time(const TwoMassState& state, double p) {
  state.validate();
  if (!(p >= 0.0)) throw InvalidParameter("long_time needs p >= 0");

  // relabel so mass 1 carries the smaller endpoint exponent
  const bool swap = state.mdd1.alpha > state.mdd2.alpha;
  const MddSpec& m1 = swap ? state.mdd2 : state.mdd1;
  const MddSpec& m2 = swap ? state.mdd1 : state.mdd2;
  const double w1 = swap ? state.w2 : state.w1;
  const double w2 = swap ? state.w1 : state.w2;

  AsymptoticModel model;
  model.swapped = swap;
  model.p = p;
  model.alpha = {m1.alpha, m2.alpha};
  model.mu0 = {m1.xi0, m2.xi0};
  model.weights = {w1, w2};
  model.c0 = {endpoint_constant(m1), endpoint_constant(m2)};
  model.chi = {chi_factor(m1.xi0, p), chi_factor(m2.xi0, p)};

  const auto st = short_time(state, p);
  model.pi_bar0 = st.pi_bar0;
  model.a_bar0 = st.a_bar0;
  model.a_bar1 = st.a_bar1;
  model.a = swap ? std::array{st.a[1], st.a[0]} : st.a;

  for (int j = 0; j < 2; ++j) {
    const double wj = model.weights[j];
    const double cj = model.c0[j];
    model.pl_term[j] = wj * wj * cj * cj *
                       std::pow(model.chi[j], 2.0 * (1.0 + model.alpha[j]));
  }
  model.P_osc = w1 * w2 * model.c0[0] * model.c0[1] *
                std::pow(model.chi[0], 1.0 + model.alpha[0]) *
                std::pow(model.chi[1], 1.0 + model.alpha[1]);
  model.varpi = varpi_value(model.mu0[0], model.mu0[1], p);
  model.period = model.varpi == 0.0
                     ? std::numeric_limits<double>::infinity()
                     : 2.0 * kPi / std::abs(model.varpi);
  model.pl_exponent = 2.0 * (1.0 + model.alpha[0]);
  model.osc_exponent = 2.0 + model.alpha[0] + model.alpha[1];
  model.phase_offset = 0.5 * kPi * (model.alpha[1] - model.alpha[0]);

  if (!same(model.alpha[0], model.alpha[1])) {
    model.regime = Regime::PowerLawDistinctAlpha;
    model.P_pl = model.pl_term[0];
  } else if (!same(model.mu0[0], model.mu0[1])) {
    model.regime = Regime::DampedOscillation;
    model.P_pl = model.pl_term[0] + model.pl_term[1];
  } else {
    model.regime = Regime::PowerLawEqualAlphaEqualBound;
    const double csum = w1 * model.c0[0] + w2 * model.c0[1];
    model.P_pl = csum * csum *
                 std::pow(model.chi[0], 2.0 * (1.0 + model.alpha[0]));
  }
  return model;
}

double AsymptoticModel::predict_power_law(double tau) const {
  return pl_term[0] * std::pow(tau, -2.0 * (1.0 + alpha[0])) +
         pl_term[1] * std::pow(tau, -2.0 * (1.0 + alpha[1]));
}

double AsymptoticModel::predict_cross(double tau) const {
  return 2.0 * P_osc * std::pow(tau, -osc_exponent) *
         std::cos(phase_offset + varpi * tau);
}

double AsymptoticModel::predict(double tau) const {
  if (!(tau > 0.0)) throw InvalidParameter("predictor needs tau > 0");
  return predict_power_law(tau) + predict_cross(tau);
}

double AsymptoticModel::envelope_max(double tau) const {
  return predict_power_law(tau) + 2.0 * P_osc * std::pow(tau, -osc_exponent);
}

double AsymptoticModel::envelope_min(double tau) const {
  return predict_power_law(tau) - 2.0 * P_osc * std::pow(tau, -osc_exponent);
}

std::string AsymptoticModel::report() const {
  std::ostringstream os;
  os << "regime = " << to_string(regime) << "\n";
  os << "index_order = " << (swapped ? "2,1" : "1,2") << "\n";
  put(os, "p", p);
  put(os, "alpha_1", alpha[0]);
  put(os, "alpha_2", alpha[1]);
  put(os, "mu0_1", mu0[0]);
  put(os, "mu0_2", mu0[1]);
  put(os, "weight_1", weights[0]);
  put(os, "weight_2", weights[1]);
  put(os, "c0_1", c0[0]);
  put(os, "c0_2", c0[1]);
  put(os, "chi_1", chi[0]);
  put(os, "chi_2", chi[1]);
  put(os, "pi_bar0", pi_bar0);
  put(os, "a_bar0", a_bar0);
  put(os, "a_bar1", a_bar1);
  put(os, "P_pl", P_pl);
  put(os, "P_osc", P_osc);
  put(os, "varpi", varpi);
  put(os, "period", period);
  put(os, "pl_exponent", pl_exponent);
  put(os, "osc_exponent", osc_exponent);
  put(os, "phase_offset", phase_offset);
  return os.str();
}

LimitModels limits(const TwoMassState& state, double p) {
  state.validate();
  LimitModels out;
  out.nonrelativistic = long_time(state, 0.0);
  if (p > 0.0) {
    const AsymptoticModel m = long_time(state, p);
    UltraRelApprox ur;
    for (int j = 0; j < 2; ++j) ur.chi[j] = p / m.mu0[j];
    for (int j = 0; j < 2; ++j) {
      const double wj = m.weights[j];
      const double cj = m.c0[j];
      ur.pl_term[j] =
          wj * wj * cj * cj * std::pow(ur.chi[j], 2.0 * (1.0 + m.alpha[j]));
    }
    ur.P_osc = m.weights[0] * m.weights[1] * m.c0[0] * m.c0[1] *
               std::pow(ur.chi[0], 1.0 + m.alpha[0]) *
               std::pow(ur.chi[1], 1.0 + m.alpha[1]);
    switch (m.regime) {
      case Regime::PowerLawDistinctAlpha:
        ur.P_pl = ur.pl_term[0];
        break;
      case Regime::DampedOscillation:
        ur.P_pl = ur.pl_term[0] + ur.pl_term[1];
        break;
      case Regime::PowerLawEqualAlphaEqualBound: {
        const double csum =
            m.weights[0] * m.c0[0] + m.weights[1] * m.c0[1];
        ur.P_pl = csum * csum * std::pow(ur.chi[0], 2.0 * (1.0 + m.alpha[0]));
        break;
      }
    }
    ur.varpi = m.mu0[1] * ur.chi[1] - m.mu0[0] * ur.chi[0];  // vanishes
    out.ultrarelativistic = ur;
  }
  return out;
}

double chi_scaling_factor(const AsymptoticModel& model, double p) {
  if (model.regime != Regime::PowerLawDistinctAlpha)
    throw RegimeMismatch(
        "chi scaling is only defined when the endpoint exponents differ");
  return chi_factor(model.mu0[0], p);
}

DilationMap dilation_map(const AsymptoticModel& model, double p,
                         double p_prime) {
  if (!(p >= 0.0) || !(p_prime >= 0.0))
    throw InvalidParameter("dilation map needs nonnegative momenta");

  DilationMap out;
  const double mu1 = model.mu0[0], mu2 = model.mu0[1];
  const double musum = mu1 + mu2;
  auto weighted_mean = [&](double q) {
    return (mu1 * chi_factor(mu1, q) + mu2 * chi_factor(mu2, q)) / musum;
  };
  out.period_ratio_rest = weighted_mean(p);
  out.period_ratio_prime = weighted_mean(p) / weighted_mean(p_prime);

  if (model.regime == Regime::PowerLawDistinctAlpha) {
    out.chi_pk = chi_scaling_factor(model, p);
    out.chi_ratio = *out.chi_pk / chi_factor(model.mu0[0], p_prime);
  }
  return out;
}

std::complex<double> long_time_amplitude(const MddSpec& mdd, double p,
                                         double tau) {
  mdd.validate();
  if (!(tau > 0.0)) throw InvalidParameter("long-time amplitude needs tau > 0");
  const double c0 = endpoint_constant(mdd);
  const double chi = chi_factor(mdd.xi0, p);
  const double energy = std::sqrt(mdd.xi0 * mdd.xi0 + p * p);
  const double modulus = c0 * std::pow(chi / tau, 1.0 + mdd.alpha);
  const double phase = -(0.5 * kPi * (1.0 + mdd.alpha) + energy * tau);
  return std::polar(modulus, phase);
}

}  // namespace decaylab
