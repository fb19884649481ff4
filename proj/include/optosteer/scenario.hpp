#pragma once

// Time sweeps of the steering / entanglement measures along the analytic
// covariance trajectory, plus the parameter sets of the figure panels.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optosteer/gaussian.hpp"
#include "optosteer/model.hpp"

namespace optosteer::scenario {

using gaussian::SteeringClass;
using model::ReducedParams;

struct MeasureSample {
  double gamma_t = 0.0;
  double g_ab = 0.0;
  double g_ba = 0.0;
  double g_delta = 0.0;  // |g_ab - g_ba|
  double e2 = 0.0;
  SteeringClass steering = SteeringClass::NoWay;

  bool operator==(const MeasureSample&) const = default;
};

/// All measures of one covariance matrix.
MeasureSample measure(const gaussian::TwoModeCovariance& v, double gamma_t,
                      double eps = gaussian::kDefaultEpsilon);

/// Measures of the closed-form state at `gamma_t`.
MeasureSample sample_at(const ReducedParams& rp, double gamma_t,
                        double eps = gaussian::kDefaultEpsilon);

/// One sample per grid point, in grid order.
std::vector<MeasureSample> sweep_time(const ReducedParams& rp, std::span<const double> grid,
                                      double eps = gaussian::kDefaultEpsilon);

enum class Measure { SteeringAToB, SteeringBToA, Asymmetry, Entanglement };

double value_of(const MeasureSample& s, Measure which) noexcept;

inline constexpr double kBoundaryResolution = 1e-6;

/// First time the selected measure exceeds eps, refined by bisection on the
/// closed form to kBoundaryResolution. Empty if it never does on the series.
std::optional<double> detect_birth(const ReducedParams& rp, std::span<const MeasureSample> series,
                                   Measure which, double eps = gaussian::kDefaultEpsilon);

struct SteeringWindow {
  SteeringClass kind = SteeringClass::NoWay;
  double start = 0.0;
  double end = 0.0;
  bool open_end = false;  // runs to the end of the grid
};

/// Maximal runs of constant steering class covering the grid span, with
/// interior boundaries refined by bisection.
std::vector<SteeringWindow> steering_windows(const ReducedParams& rp,
                                             std::span<const MeasureSample> series,
                                             double eps = gaussian::kDefaultEpsilon);

enum class Panel { Fig2a, Fig2b, Fig2c, Fig2d, Fig3a, Fig3b, Fig3c, Fig3d, Fig3Inset };

inline constexpr std::array<Panel, 9> kAllPanels{
    Panel::Fig2a, Panel::Fig2b, Panel::Fig2c, Panel::Fig2d, Panel::Fig3a,
    Panel::Fig3b, Panel::Fig3c, Panel::Fig3d, Panel::Fig3Inset};

/// Accepts "2a".."2d", "3a".."3d" and "3inset". Throws InvalidInput otherwise.
Panel parse_panel(std::string_view id);
std::string_view panel_id(Panel p) noexcept;

/// Panel parameters: C1 = 15, C2 = 35; figure 2 has r = 1 with varying
/// (n_th1, n_th2), figure 3 has n_th = (1, 1) with varying r.
ReducedParams panel_parameters(Panel p);

inline constexpr double kPanelStart = 0.0;
inline constexpr double kPanelEnd = 5.0;
inline constexpr std::size_t kPanelPoints = 1001;

struct PanelDataset {
  Panel panel;
  ReducedParams params;
  std::vector<MeasureSample> samples;
};

PanelDataset figure_panel(Panel p, std::span<const double> grid,
                          double eps = gaussian::kDefaultEpsilon);
/// Default grid gamma t in [0, 5], 1001 points.
PanelDataset figure_panel(Panel p, double eps = gaussian::kDefaultEpsilon);

}  // namespace optosteer::scenario
