#pragma once

// Laboratory parameters of the double-cavity setup and their reduction to
// the dimensionless inputs of the mirror dynamics (cooperativities, thermal
// occupations, squeezing moments).
//
// All angular quantities are in rad/s. Both cavities are driven on the red
// sideband, effective detuning = -omega_m; other detunings are rejected.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace optosteer::model {

inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kBoltzmann = 1.380649e-23;     // J / K
inline constexpr double kTwoPi = 6.283185307179586;

struct CavityParams {
  double cavity_frequency = 0.0;  // omega_c, rad/s
  double laser_frequency = 0.0;   // omega_L, rad/s
  double length = 0.0;            // m
  double decay = 0.0;             // kappa, rad/s
  double laser_power = 0.0;       // W
  /// Effective detuning Delta'. Only -omega_m is supported; unset means
  /// exactly that.
  std::optional<double> effective_detuning;

  bool operator==(const CavityParams&) const = default;
};

struct MirrorParams {
  double mass = 0.0;                  // kg
  double mechanical_frequency = 0.0;  // omega_m, rad/s
  double damping = 0.0;               // gamma, rad/s
  std::optional<double> temperature;         // K
  std::optional<double> thermal_occupation;  // n_th

  bool operator==(const MirrorParams&) const = default;
};

struct PhysicalParams {
  std::array<CavityParams, 2> cavity;
  std::array<MirrorParams, 2> mirror;
  double squeezing = 0.0;  // r

  bool operator==(const PhysicalParams&) const = default;
};

/// Parameters of the adiabatically reduced mirror dynamics.
struct ReducedParams {
  double c1 = 0.0;
  double c2 = 0.0;
  double nth1 = 0.0;
  double nth2 = 0.0;
  double r = 0.0;
  double gamma = 1.0;  // mechanical damping, rad/s

  /// Throws InvalidInput unless every field is finite, C_j, n_th,j, r >= 0
  /// and gamma > 0.
  void validate() const;

  double cooperativity(int j) const { return j == 1 ? c1 : c2; }
  double thermal_occupation(int j) const { return j == 1 ? nth1 : nth2; }
  /// N = sinh^2 r
  double squeezed_photons() const;
  /// M = sinh r cosh r
  double squeezed_correlation() const;
  /// Gamma_a,j = C_j gamma
  double optical_damping(int j) const { return cooperativity(j) * gamma; }
  /// Gamma_j = Gamma_a,j + gamma
  double total_damping(int j) const { return optical_damping(j) + gamma; }

  bool operator==(const ReducedParams&) const = default;
};

struct MeanFields {
  std::complex<double> cavity;  // a_s
  std::complex<double> mirror;  // b_s
};

/// Checks the invariants of PhysicalParams: positivity, equal mechanical
/// frequencies, a supported detuning and consistent n_th / T pairs.
void validate(const PhysicalParams& p);

/// Bose-Einstein occupation 1/(exp(hbar w / kB T) - 1).
double thermal_occupation(double temperature, double mechanical_frequency);

/// Effective n_th of mirror j (1-based), from the direct value or from T.
double mirror_occupation(const PhysicalParams& p, int j);

/// Single-photon coupling g_j = (omega_c/l) sqrt(hbar / (m omega_m)).
double single_photon_coupling(const PhysicalParams& p, int j);
/// Steady-state amplitudes with the drive phase chosen so a_s = -i|a_s|.
MeanFields mean_fields(const PhysicalParams& p, int j);
/// Light-enhanced coupling G_j.
double enhanced_coupling(const PhysicalParams& p, int j);
/// C_j = 4 G_j^2 / (gamma kappa_j).
double cooperativity(const PhysicalParams& p, int j);
/// C_j from the fully expanded expression in the laboratory parameters.
double cooperativity_expanded(const PhysicalParams& p, int j);

/// Throws UnsupportedConfiguration when the two dampings differ.
ReducedParams reduce(const PhysicalParams& p);

enum class RegimeStatus { Pass, Warn, Fail };

std::string to_string(RegimeStatus s);

struct RegimeRatio {
  std::string name;  // resolved_sideband, weak_coupling, adiabatic, quality_factor
  int cavity = 0;    // 1 or 2; 0 for mirror-only quantities
  double value = 0.0;
  RegimeStatus status = RegimeStatus::Fail;
};

struct RegimeReport {
  double threshold = 5.0;
  double warn_floor = 2.0;
  std::vector<RegimeRatio> ratios;
  /// True only when every ratio passes.
  bool pass = false;
  /// Worst status over all ratios.
  RegimeStatus overall = RegimeStatus::Fail;
};

/// Ratios omega_m/kappa_j, kappa_j/G_j, kappa_j/gamma_j and Q = omega_m/gamma.
/// A ratio passes at >= threshold, warns in [warn_floor, threshold).
RegimeReport regime_check(const PhysicalParams& p, double threshold = 5.0,
                          double warn_floor = 2.0);

/// Parameters of the membrane experiment used for the figures: 947 kHz
/// mirrors, 215 kHz cavity linewidth, 140 Hz damping, 25 mm cavities.
///
/// The effective mass is 145e-9 kg. Reading it as 145 ng (1.45e-10 kg) gives
/// cooperativities near 1.4e4 and kappa < G, contradicting C ~ 15 and 35 and
/// the weak-coupling ordering used for the figures; 145e-9 kg restores both.
PhysicalParams groblacher_parameters(double power1 = 5e-3, double power2 = 11e-3);

}  // namespace optosteer::model
