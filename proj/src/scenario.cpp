#include "optosteer/scenario.hpp"

#include <cmath>
#include <string>

#include "optosteer/dynamics.hpp"
#include "optosteer/error.hpp"

namespace optosteer::scenario {

namespace {

// Bisects [lo, hi] where pred(lo) is true and pred(hi) is false; returns the
// midpoint of the final bracket.
template <typename Pred>
double bisect(double lo, double hi, Pred pred) {
  while (hi - lo > kBoundaryResolution) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid)) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

MeasureSample measure(const gaussian::TwoModeCovariance& v, double gamma_t, double eps) {
  MeasureSample s;
  s.gamma_t = gamma_t;
  s.g_ab = gaussian::steering_a_to_b(v);
  s.g_ba = gaussian::steering_b_to_a(v);
  s.g_delta = std::abs(s.g_ab - s.g_ba);
  s.e2 = gaussian::renyi2_entanglement(v);
  s.steering = gaussian::classify(s.g_ab, s.g_ba, eps);
  return s;
}

MeasureSample sample_at(const ReducedParams& rp, double gamma_t, double eps) {
  return measure(dynamics::covariance_closed_form(rp, gamma_t), gamma_t, eps);
}

std::vector<MeasureSample> sweep_time(const ReducedParams& rp, std::span<const double> grid,
                                      double eps) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidInput, "epsilon must be > 0");
  std::vector<MeasureSample> out;
  out.reserve(grid.size());
  for (double t : grid) out.push_back(sample_at(rp, t, eps));
  return out;
}

double value_of(const MeasureSample& s, Measure which) noexcept {
  switch (which) {
    case Measure::SteeringAToB: return s.g_ab;
    case Measure::SteeringBToA: return s.g_ba;
    case Measure::Asymmetry: return s.g_delta;
    case Measure::Entanglement: return s.e2;
  }
  return 0.0;
}

std::optional<double> detect_birth(const ReducedParams& rp, std::span<const MeasureSample> series,
                                   Measure which, double eps) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (value_of(series[i], which) <= eps) continue;
    if (i == 0) return series[0].gamma_t;
    auto dormant = [&](double t) { return value_of(sample_at(rp, t, eps), which) <= eps; };
    return bisect(series[i - 1].gamma_t, series[i].gamma_t, dormant);
  }
  return std::nullopt;
}

std::vector<SteeringWindow> steering_windows(const ReducedParams& rp,
                                             std::span<const MeasureSample> series,
                                             double eps) {
  std::vector<SteeringWindow> out;
  if (series.empty()) return out;

  // Reclassify with this eps; the series may have been sampled with another.
  auto class_of = [&](const MeasureSample& s) { return gaussian::classify(s.g_ab, s.g_ba, eps); };
  SteeringWindow current{class_of(series.front()), series.front().gamma_t, 0.0, false};
  for (std::size_t i = 1; i < series.size(); ++i) {
    const SteeringClass next = class_of(series[i]);
    if (next == current.kind) continue;
    const SteeringClass kind = current.kind;
    auto same = [&](double t) { return sample_at(rp, t, eps).steering == kind; };
    const double boundary = bisect(series[i - 1].gamma_t, series[i].gamma_t, same);
    current.end = boundary;
    out.push_back(current);
    current = SteeringWindow{next, boundary, 0.0, false};
  }
  current.end = series.back().gamma_t;
  current.open_end = true;
  out.push_back(current);
  return out;
}

Panel parse_panel(std::string_view id) {
  for (Panel p : kAllPanels) {
    if (panel_id(p) == id) return p;
  }
  throw Error(ErrorKind::InvalidInput,
              "unknown panel '" + std::string(id) + "' (expected 2a-2d, 3a-3d or 3inset)");
}

std::string_view panel_id(Panel p) noexcept {
  switch (p) {
    case Panel::Fig2a: return "2a";
    case Panel::Fig2b: return "2b";
    case Panel::Fig2c: return "2c";
    case Panel::Fig2d: return "2d";
    case Panel::Fig3a: return "3a";
    case Panel::Fig3b: return "3b";
    case Panel::Fig3c: return "3c";
    case Panel::Fig3d: return "3d";
    case Panel::Fig3Inset: return "3inset";
  }
  return "";
}

ReducedParams panel_parameters(Panel p) {
  ReducedParams rp;
  rp.c1 = 15.0;
  rp.c2 = 35.0;
  rp.gamma = model::kTwoPi * 140.0;
  auto fig2 = [&](double n1, double n2) {
    rp.r = 1.0;
    rp.nth1 = n1;
    rp.nth2 = n2;
  };
  auto fig3 = [&](double r) {
    rp.r = r;
    rp.nth1 = 1.0;
    rp.nth2 = 1.0;
  };
  switch (p) {
    case Panel::Fig2a: fig2(0.5, 1.0); break;
    case Panel::Fig2b: fig2(1.0, 0.5); break;
    case Panel::Fig2c: fig2(1.0, 1.2); break;
    case Panel::Fig2d: fig2(1.0, 1.5); break;
    case Panel::Fig3a: fig3(0.1); break;
    case Panel::Fig3b: fig3(0.5); break;
    case Panel::Fig3c: fig3(1.0); break;
    case Panel::Fig3d: fig3(1.1); break;
    case Panel::Fig3Inset: fig3(1.7); break;
  }
  return rp;
}

PanelDataset figure_panel(Panel p, std::span<const double> grid, double eps) {
  PanelDataset out{p, panel_parameters(p), {}};
  out.samples = sweep_time(out.params, grid, eps);
  return out;
}

PanelDataset figure_panel(Panel p, double eps) {
  const auto grid = dynamics::linear_grid(kPanelStart, kPanelEnd, kPanelPoints);
  return figure_panel(p, grid, eps);
}

}  // namespace optosteer::scenario
