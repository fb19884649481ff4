#include "optosteer/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "optosteer/error.hpp"

namespace optosteer::model {

namespace {

constexpr double kDetuningTolerance = 1e-9;
constexpr double kOccupationAgreement = 1e-6;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidInput, what);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

std::string field(const char* name, int j) {
  return std::string(name) + "[" + std::to_string(j) + "]";
}

void check_index(int j) {
  if (j != 1 && j != 2) throw Error(ErrorKind::InvalidInput, "cavity index must be 1 or 2");
}

// Mechanical frequency shared by both mirrors.
double omega_m(const PhysicalParams& p) { return p.mirror[0].mechanical_frequency; }

// (kappa/2)^2 + Delta'^2 with Delta' = -omega_m.
double detuning_denominator(const PhysicalParams& p, int j) {
  const double half_kappa = 0.5 * p.cavity[j - 1].decay;
  const double w = omega_m(p);
  return half_kappa * half_kappa + w * w;
}

RegimeStatus grade(double value, double threshold, double warn_floor) {
  if (value >= threshold) return RegimeStatus::Pass;
  if (value >= warn_floor) return RegimeStatus::Warn;
  return RegimeStatus::Fail;
}

}  // namespace

void ReducedParams::validate() const {
  require(nonnegative(c1) && nonnegative(c2), "cooperativities must be finite and >= 0");
  require(nonnegative(nth1) && nonnegative(nth2),
          "thermal occupations must be finite and >= 0");
  require(nonnegative(r), "squeezing r must be finite and >= 0");
  require(positive(gamma), "mechanical damping must be finite and > 0");
}

double ReducedParams::squeezed_photons() const {
  const double s = std::sinh(r);
  return s * s;
}

double ReducedParams::squeezed_correlation() const { return std::sinh(r) * std::cosh(r); }

void validate(const PhysicalParams& p) {
  for (int j = 1; j <= 2; ++j) {
    const CavityParams& c = p.cavity[j - 1];
    const MirrorParams& m = p.mirror[j - 1];
    require(positive(c.cavity_frequency), field("cavity_frequency", j) + " must be > 0");
    require(positive(c.laser_frequency), field("laser_frequency", j) + " must be > 0");
    require(positive(c.length), field("length", j) + " must be > 0");
    require(positive(c.decay), field("decay", j) + " must be > 0");
    require(nonnegative(c.laser_power), field("laser_power", j) + " must be >= 0");
    require(positive(m.mass), field("mass", j) + " must be > 0");
    require(positive(m.mechanical_frequency), field("mechanical_frequency", j) + " must be > 0");
    require(positive(m.damping), field("damping", j) + " must be > 0");
    require(!m.temperature || nonnegative(*m.temperature),
            field("temperature", j) + " must be >= 0");
    require(!m.thermal_occupation || nonnegative(*m.thermal_occupation),
            field("thermal_occupation", j) + " must be >= 0");
    require(m.temperature || m.thermal_occupation,
            field("thermal_occupation", j) + " or temperature is required");
    if (m.temperature && m.thermal_occupation) {
      const double derived = thermal_occupation(*m.temperature, m.mechanical_frequency);
      const double given = *m.thermal_occupation;
      const double scale = std::max(std::abs(derived), std::abs(given));
      require(std::abs(derived - given) <= kOccupationAgreement * scale,
              field("thermal_occupation", j) + " disagrees with the temperature");
    }
  }
  require(nonnegative(p.squeezing), "squeezing r must be >= 0");

  const double w1 = p.mirror[0].mechanical_frequency;
  const double w2 = p.mirror[1].mechanical_frequency;
  if (w1 != w2) {
    throw Error(ErrorKind::UnsupportedConfiguration,
                "both mirrors must share the same mechanical frequency");
  }
  for (int j = 1; j <= 2; ++j) {
    const auto& det = p.cavity[j - 1].effective_detuning;
    if (det && !(std::abs(*det + w1) <= kDetuningTolerance * w1)) {
      throw Error(ErrorKind::UnsupportedConfiguration,
                  field("effective_detuning", j) +
                      " must equal -omega_m (red sideband); other detunings are not modeled");
    }
  }
}

double thermal_occupation(double temperature, double mechanical_frequency) {
  require(std::isfinite(temperature) && temperature >= 0.0, "temperature must be >= 0");
  require(positive(mechanical_frequency), "mechanical frequency must be > 0");
  if (temperature == 0.0) return 0.0;
  const double x = kHbar * mechanical_frequency / (kBoltzmann * temperature);
  return 1.0 / std::expm1(x);
}

double mirror_occupation(const PhysicalParams& p, int j) {
  check_index(j);
  const MirrorParams& m = p.mirror[j - 1];
  if (m.thermal_occupation) return *m.thermal_occupation;
  if (m.temperature) return thermal_occupation(*m.temperature, m.mechanical_frequency);
  throw Error(ErrorKind::InvalidInput, field("thermal_occupation", j) + " is not set");
}

double single_photon_coupling(const PhysicalParams& p, int j) {
  check_index(j);
  const CavityParams& c = p.cavity[j - 1];
  const MirrorParams& m = p.mirror[j - 1];
  return (c.cavity_frequency / c.length) * std::sqrt(kHbar / (m.mass * omega_m(p)));
}

MeanFields mean_fields(const PhysicalParams& p, int j) {
  validate(p);
  check_index(j);
  using namespace std::complex_literals;
  const CavityParams& c = p.cavity[j - 1];
  const MirrorParams& m = p.mirror[j - 1];
  const double detuning = -omega_m(p);
  const double drive = std::sqrt(2.0 * c.decay * c.laser_power / (kHbar * c.laser_frequency));
  const double phase = -std::atan(2.0 * detuning / c.decay);

  MeanFields out;
  out.cavity = -1i * drive * std::exp(1i * phase) / (0.5 * c.decay - 1i * detuning);
  const double g0 = single_photon_coupling(p, j);
  out.mirror = -1i * g0 * std::norm(out.cavity) / (0.5 * m.damping + 1i * omega_m(p));
  return out;
}

double enhanced_coupling(const PhysicalParams& p, int j) {
  validate(p);
  check_index(j);
  const CavityParams& c = p.cavity[j - 1];
  const MirrorParams& m = p.mirror[j - 1];
  const double num = 2.0 * c.decay * c.laser_power;
  const double den = m.mass * omega_m(p) * c.laser_frequency * detuning_denominator(p, j);
  return (c.cavity_frequency / c.length) * std::sqrt(num / den);
}

double cooperativity(const PhysicalParams& p, int j) {
  const double g = enhanced_coupling(p, j);
  return 4.0 * g * g / (p.mirror[j - 1].damping * p.cavity[j - 1].decay);
}

double cooperativity_expanded(const PhysicalParams& p, int j) {
  validate(p);
  check_index(j);
  const CavityParams& c = p.cavity[j - 1];
  const MirrorParams& m = p.mirror[j - 1];
  const double prefactor =
      8.0 * c.cavity_frequency * c.cavity_frequency /
      (m.damping * m.mass * omega_m(p) * c.laser_frequency * c.length * c.length);
  return prefactor * c.laser_power / detuning_denominator(p, j);
}

ReducedParams reduce(const PhysicalParams& p) {
  validate(p);
  if (p.mirror[0].damping != p.mirror[1].damping) {
    throw Error(ErrorKind::UnsupportedConfiguration,
                "closed-form dynamics require identical mechanical damping rates");
  }
  ReducedParams rp;
  rp.c1 = cooperativity(p, 1);
  rp.c2 = cooperativity(p, 2);
  rp.nth1 = mirror_occupation(p, 1);
  rp.nth2 = mirror_occupation(p, 2);
  rp.r = p.squeezing;
  rp.gamma = p.mirror[0].damping;
  rp.validate();
  return rp;
}

std::string to_string(RegimeStatus s) {
  switch (s) {
    case RegimeStatus::Pass: return "pass";
    case RegimeStatus::Warn: return "warn";
    case RegimeStatus::Fail: return "fail";
  }
  return "unknown";
}

RegimeReport regime_check(const PhysicalParams& p, double threshold, double warn_floor) {
  validate(p);
  require(positive(threshold) && positive(warn_floor) && warn_floor <= threshold,
          "regime thresholds must satisfy 0 < warn_floor <= threshold");
  RegimeReport report;
  report.threshold = threshold;
  report.warn_floor = warn_floor;

  auto add = [&](std::string name, int cavity, double value) {
    report.ratios.push_back({std::move(name), cavity, value, grade(value, threshold, warn_floor)});
  };
  const double w = omega_m(p);
  for (int j = 1; j <= 2; ++j) {
    const double kappa = p.cavity[j - 1].decay;
    const double g = enhanced_coupling(p, j);
    add("resolved_sideband", j, w / kappa);
    add("weak_coupling", j, g > 0.0 ? kappa / g : std::numeric_limits<double>::infinity());
    add("adiabatic", j, kappa / p.mirror[j - 1].damping);
  }
  for (int j = 1; j <= 2; ++j) {
    add("quality_factor", j, w / p.mirror[j - 1].damping);
  }

  report.overall = RegimeStatus::Pass;
  for (const auto& r : report.ratios) {
    if (r.status == RegimeStatus::Fail) report.overall = RegimeStatus::Fail;
    else if (r.status == RegimeStatus::Warn && report.overall == RegimeStatus::Pass)
      report.overall = RegimeStatus::Warn;
  }
  report.pass = report.overall == RegimeStatus::Pass;
  return report;
}

PhysicalParams groblacher_parameters(double power1, double power2) {
  PhysicalParams p;
  const std::array<double, 2> power{power1, power2};
  for (int j = 0; j < 2; ++j) {
    p.cavity[j].cavity_frequency = kTwoPi * 5.26e14;
    p.cavity[j].laser_frequency = kTwoPi * 2.82e14;
    p.cavity[j].length = 25e-3;
    p.cavity[j].decay = kTwoPi * 215e3;
    p.cavity[j].laser_power = power[j];
    p.mirror[j].mass = 145e-9;
    p.mirror[j].mechanical_frequency = kTwoPi * 947e3;
    p.mirror[j].damping = kTwoPi * 140.0;
    p.mirror[j].thermal_occupation = 1.0;
  }
  p.squeezing = 1.0;
  return p;
}

}  // namespace optosteer::model
