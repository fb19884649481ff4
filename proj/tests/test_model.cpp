#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "optosteer/error.hpp"
#include "optosteer/model.hpp"

namespace {

using namespace optosteer;
using namespace optosteer::model;

constexpr double kOmegaM = kTwoPi * 947e3;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(ThermalOccupation, ZeroTemperature) { EXPECT_EQ(thermal_occupation(0.0, kOmegaM), 0.0); }

TEST(ThermalOccupation, InvertedForOne) {
  const double t = kHbar * kOmegaM / (kBoltzmann * std::numbers::ln2);
  EXPECT_NEAR(thermal_occupation(t, kOmegaM), 1.0, 1e-12);
}

TEST(ThermalOccupation, HighTemperatureSeries) {
  // hbar w / kB T = 0.1  =>  n ~ 10 - 1/2
  const double t = kHbar * kOmegaM / (kBoltzmann * 0.1);
  const double n = thermal_occupation(t, kOmegaM);
  EXPECT_LT(rel(n, 10.0 - 0.5), 0.01);
}

TEST(ThermalOccupation, NegativeTemperatureRejected) {
  EXPECT_THROW(thermal_occupation(-1.0, kOmegaM), Error);
}

TEST(MeanFields, NoDrive) {
  const auto p = groblacher_parameters(0.0, 0.0);
  const auto f = mean_fields(p, 1);
  EXPECT_EQ(f.cavity, std::complex<double>(0.0, 0.0));
  EXPECT_EQ(f.mirror, std::complex<double>(0.0, 0.0));
  EXPECT_EQ(enhanced_coupling(p, 1), 0.0);
  EXPECT_EQ(cooperativity(p, 1), 0.0);
}

TEST(MeanFields, PhaseIsMinusHalfPi) {
  const auto f = mean_fields(groblacher_parameters(), 1);
  EXPECT_GT(std::abs(f.cavity), 0.0);
  EXPECT_NEAR(std::arg(f.cavity), -std::numbers::pi / 2, 1e-12);
}

TEST(MeanFields, AmplitudeScalesWithSqrtPower) {
  const double a1 = std::abs(mean_fields(groblacher_parameters(5e-3), 1).cavity);
  const double a2 = std::abs(mean_fields(groblacher_parameters(10e-3), 1).cavity);
  EXPECT_LT(rel(a2 / a1, std::sqrt(2.0)), 1e-12);
}

TEST(EnhancedCoupling, AgreesWithMeanFieldRoute) {
  for (double power : {1e-3, 5e-3, 11e-3, 0.1}) {
    const auto p = groblacher_parameters(power, 2.0 * power);
    for (int j = 1; j <= 2; ++j) {
      const double via_fields = single_photon_coupling(p, j) * std::abs(mean_fields(p, j).cavity);
      EXPECT_LT(rel(via_fields, enhanced_coupling(p, j)), 1e-12);
    }
  }
}

TEST(EnhancedCoupling, WeakCouplingForFigureParameters) {
  const auto p = groblacher_parameters();
  for (int j = 1; j <= 2; ++j) {
    EXPECT_GT(p.cavity[j - 1].decay / enhanced_coupling(p, j), 10.0);
  }
  // Frozen from the evaluated expression: G_1 ~ 6.56e4 rad/s.
  EXPECT_NEAR(enhanced_coupling(p, 1), 6.5624e4, 10.0);
}

TEST(Cooperativity, TwoRoutesAgree) {
  const auto p = groblacher_parameters();
  for (int j = 1; j <= 2; ++j) {
    EXPECT_LT(rel(cooperativity(p, j), cooperativity_expanded(p, j)), 1e-12);
  }
}

TEST(Cooperativity, FigureValues) {
  const auto p = groblacher_parameters();
  EXPECT_NEAR(cooperativity(p, 1), 15.0, 0.15 * 15.0);
  EXPECT_NEAR(cooperativity(p, 2), 35.0, 0.15 * 35.0);
}

TEST(Cooperativity, LiteralNanogramMassIsThousandfoldLarger) {
  auto p = groblacher_parameters();
  p.mirror[0].mass = 145e-12;
  EXPECT_NEAR(cooperativity(p, 1), 1.4496e4, 1.0);
  EXPECT_LT(p.cavity[0].decay / enhanced_coupling(p, 1), 1.0);
}

TEST(Cooperativity, LinearInPower) {
  const double c1 = cooperativity(groblacher_parameters(5e-3), 1);
  const double c2 = cooperativity(groblacher_parameters(10e-3), 1);
  EXPECT_LT(rel(c2 / c1, 2.0), 1e-12);
}

TEST(Cooperativity, InvariantUnderPowerAndMassScaling) {
  auto p = groblacher_parameters();
  const double base = cooperativity(p, 1);
  for (double alpha : {0.1, 3.0, 17.0}) {
    auto q = p;
    q.cavity[0].laser_power *= alpha;
    q.mirror[0].mass *= alpha;
    EXPECT_LT(rel(cooperativity(q, 1), base), 1e-12);
  }
}

TEST(Reduce, SqueezingMoments) {
  ReducedParams rp;
  rp.r = 0.0;
  EXPECT_EQ(rp.squeezed_photons(), 0.0);
  EXPECT_EQ(rp.squeezed_correlation(), 0.0);
  rp.r = 1.0;
  EXPECT_NEAR(rp.squeezed_photons(), 1.3811, 5e-5);
  EXPECT_NEAR(rp.squeezed_correlation(), 1.8134, 5e-5);
  for (double r = 0.0; r <= 3.0; r += 0.05) {
    rp.r = r;
    const double n = rp.squeezed_photons();
    const double m = rp.squeezed_correlation();
    EXPECT_LE(std::abs(m * m - n * (n + 1.0)), 1e-12 * std::max(1.0, m * m));
  }
}

TEST(Reduce, DampingRates) {
  ReducedParams rp{15.0, 35.0, 1.0, 1.0, 1.0, kTwoPi * 140.0};
  EXPECT_DOUBLE_EQ(rp.optical_damping(1), 15.0 * rp.gamma);
  EXPECT_DOUBLE_EQ(rp.total_damping(1), 16.0 * rp.gamma);
  EXPECT_DOUBLE_EQ(rp.total_damping(2), 36.0 * rp.gamma);
}

TEST(Reduce, FromPhysical) {
  const auto p = groblacher_parameters();
  const auto rp = reduce(p);
  EXPECT_EQ(rp.c1, cooperativity(p, 1));
  EXPECT_EQ(rp.c2, cooperativity(p, 2));
  EXPECT_EQ(rp.nth1, 1.0);
  EXPECT_EQ(rp.r, 1.0);
  EXPECT_EQ(rp.gamma, kTwoPi * 140.0);
  EXPECT_EQ(reduce(p), rp);
}

TEST(Reduce, OccupationFromTemperature) {
  auto p = groblacher_parameters();
  p.mirror[1].thermal_occupation.reset();
  p.mirror[1].temperature = 1e-3;
  EXPECT_EQ(reduce(p).nth2, thermal_occupation(1e-3, kOmegaM));
}

TEST(Reduce, UnequalDampingUnsupported) {
  auto p = groblacher_parameters();
  p.mirror[1].damping *= 2.0;
  try {
    reduce(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedConfiguration);
  }
}

TEST(Validate, Rejections) {
  auto expect_invalid = [](PhysicalParams p, ErrorKind kind) {
    try {
      validate(p);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), kind) << e.what();
    }
  };
  auto p = groblacher_parameters();
  auto q = p;
  q.cavity[0].length = 0.0;
  expect_invalid(q, ErrorKind::InvalidInput);
  q = p;
  q.mirror[1].mechanical_frequency *= 1.01;
  expect_invalid(q, ErrorKind::UnsupportedConfiguration);
  q = p;
  q.cavity[0].effective_detuning = +kOmegaM;
  expect_invalid(q, ErrorKind::UnsupportedConfiguration);
  q = p;
  q.cavity[0].effective_detuning = -kOmegaM;
  EXPECT_NO_THROW(validate(q));
  q = p;
  q.mirror[0].temperature = 1.0;  // n_th ~ 2.2e4, contradicts 1.0
  expect_invalid(q, ErrorKind::InvalidInput);
  q = p;
  q.mirror[0].thermal_occupation.reset();
  expect_invalid(q, ErrorKind::InvalidInput);
  q = p;
  q.squeezing = -0.1;
  expect_invalid(q, ErrorKind::InvalidInput);
}

TEST(Regime, FigureParametersPassAtFour) {
  const auto report = regime_check(groblacher_parameters(), 4.0);
  EXPECT_TRUE(report.pass);
  for (const auto& r : report.ratios) EXPECT_EQ(r.status, RegimeStatus::Pass) << r.name;
}

TEST(Regime, DefaultThresholdWarnsOnSidebandRatio) {
  const auto report = regime_check(groblacher_parameters());
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(report.overall, RegimeStatus::Warn);
  for (const auto& r : report.ratios) {
    if (r.name == "resolved_sideband") {
      EXPECT_NEAR(r.value, 947.0 / 215.0, 1e-12);
      EXPECT_EQ(r.status, RegimeStatus::Warn);
    } else {
      EXPECT_EQ(r.status, RegimeStatus::Pass) << r.name;
    }
  }
}

TEST(Regime, SidebandFailure) {
  auto p = groblacher_parameters();
  p.cavity[0].decay = kOmegaM;
  const auto report = regime_check(p);
  EXPECT_EQ(report.overall, RegimeStatus::Fail);
  EXPECT_EQ(report.ratios[0].name, "resolved_sideband");
  EXPECT_EQ(report.ratios[0].status, RegimeStatus::Fail);
}

TEST(Regime, StrongCouplingFailure) {
  // Raise the drive until G_1 = kappa_1.
  auto p = groblacher_parameters();
  const double g = enhanced_coupling(p, 1);
  const double ratio = p.cavity[0].decay / g;
  p.cavity[0].laser_power *= ratio * ratio;
  EXPECT_NEAR(enhanced_coupling(p, 1), p.cavity[0].decay, 1e-6 * p.cavity[0].decay);
  const auto report = regime_check(p);
  for (const auto& r : report.ratios) {
    if (r.name == "weak_coupling" && r.cavity == 1) EXPECT_EQ(r.status, RegimeStatus::Fail);
  }
  EXPECT_FALSE(report.pass);
}

}  // namespace
