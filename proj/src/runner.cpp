#include "optosteer/runner.hpp"

#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <vector>

#include "json.hpp"

#include "optosteer/dynamics.hpp"
#include "optosteer/model.hpp"

namespace optosteer::cli {

namespace {

using json = nlohmann::ordered_json;
using scenario::MeasureSample;

// Value as printed with 12 significant digits, so CSV and JSON agree.
double rounded(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

model::ReducedParams reduced_params(const RunConfig& c) {
  if (const auto* r = std::get_if<ReducedInput>(&c.params)) {
    auto rp = r->to_params();
    rp.validate();
    return rp;
  }
  if (const auto* p = std::get_if<PhysicalInput>(&c.params)) {
    return model::reduce(p->to_params());
  }
  return scenario::panel_parameters(scenario::parse_panel(c.panel.value_or("")));
}

double to_gamma_t(const RunConfig& c, const model::ReducedParams& rp, double t) {
  return c.time_unit == TimeUnit::Seconds ? rp.gamma * t : t;
}

std::vector<double> grid_of(const RunConfig& c, const model::ReducedParams& rp) {
  return dynamics::linear_grid(to_gamma_t(c, rp, c.grid.start), to_gamma_t(c, rp, c.grid.end),
                               c.grid.points);
}

std::vector<MeasureSample> samples_on(const RunConfig& c, const model::ReducedParams& rp,
                                      std::span<const double> grid) {
  if (c.solver == Solver::ClosedForm) return scenario::sweep_time(rp, grid, c.epsilon);
  dynamics::OdeOptions opts;
  opts.step = c.ode_step;
  const auto traj = dynamics::covariance_ode(rp, grid, opts);
  std::vector<MeasureSample> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.push_back(scenario::measure(traj.states[i], grid[i], c.epsilon));
  }
  return out;
}

std::string render_samples(const RunConfig& c, std::span<const MeasureSample> s) {
  return c.format == OutputFormat::Csv ? samples_csv(s) : samples_json(s);
}

RunOutput run_stationary(const RunConfig& c) {
  const auto rp = reduced_params(c);
  const auto v = dynamics::stationary_covariance(rp);
  const auto m = scenario::measure(v, std::numeric_limits<double>::infinity(), c.epsilon);
  const auto& x = v.matrix();
  RunOutput out;
  if (c.format == OutputFormat::Csv) {
    out.data = "v11,v22,v33,v44,v13,v24,g_ab,g_ba,g_delta,e2\n";
    const double row[] = {x(0, 0), x(1, 1), x(2, 2), x(3, 3), x(0, 2),
                          x(1, 3), m.g_ab,  m.g_ba,  m.g_delta, m.e2};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      out.data += (i ? "," : "") + format_number(row[i]);
    }
    out.data += '\n';
  } else {
    json cm = json::array();
    for (int i = 0; i < 4; ++i) {
      json r = json::array();
      for (int j = 0; j < 4; ++j) r.push_back(rounded(x(i, j)));
      cm.push_back(r);
    }
    out.data = dump({{"covariance", cm},
                     {"g_ab", rounded(m.g_ab)},
                     {"g_ba", rounded(m.g_ba)},
                     {"g_delta", rounded(m.g_delta)},
                     {"e2", rounded(m.e2)},
                     {"steering", gaussian::to_string(m.steering)}});
  }
  return out;
}

RunOutput run_regime(const RunConfig& c) {
  const auto& in = std::get<PhysicalInput>(c.params);
  const auto report = model::regime_check(in.to_params(), c.regime_threshold);
  RunOutput out;
  if (c.format == OutputFormat::Csv) {
    out.data = "quantity,cavity,ratio,threshold,status\n";
    for (const auto& r : report.ratios) {
      out.data += r.name + "," + std::to_string(r.cavity) + "," + format_number(r.value) + "," +
                  format_number(report.threshold) + "," + model::to_string(r.status) + "\n";
    }
  } else {
    json ratios = json::array();
    for (const auto& r : report.ratios) {
      ratios.push_back({{"quantity", r.name},
                        {"cavity", r.cavity},
                        {"ratio", rounded(r.value)},
                        {"status", model::to_string(r.status)}});
    }
    out.data = dump({{"threshold", report.threshold},
                     {"warn_floor", report.warn_floor},
                     {"overall", model::to_string(report.overall)},
                     {"ratios", ratios}});
  }
  out.diagnostics = "regime check: " + model::to_string(report.overall) + "\n";
  for (const auto& r : report.ratios) {
    if (r.status != model::RegimeStatus::Pass) {
      out.diagnostics += "  " + model::to_string(r.status) + ": " + r.name + " (cavity " +
                         std::to_string(r.cavity) + ") ratio " + format_number(r.value) +
                         " below " + format_number(report.threshold) + "\n";
    }
  }
  return out;
}

RunOutput dispatch(const RunConfig& c) {
  switch (c.mode) {
    case Mode::Eval: {
      const auto rp = reduced_params(c);
      const double t = to_gamma_t(c, rp, c.eval_time);
      const std::vector<double> grid{t};
      return {kExitOk, render_samples(c, samples_on(c, rp, grid)), {}};
    }
    case Mode::Sweep:
    case Mode::Figure: {
      const auto rp = reduced_params(c);
      const auto grid = grid_of(c, rp);
      return {kExitOk, render_samples(c, samples_on(c, rp, grid)), {}};
    }
    case Mode::Regime: return run_regime(c);
    case Mode::Stationary: return run_stationary(c);
  }
  return {kExitComputeError, {}, "unknown mode\n"};
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  return kind == ErrorKind::ConfigError ? kExitConfigError : kExitComputeError;
}

RunOutput run(const RunConfig& config) {
  try {
    return dispatch(config);
  } catch (const Error& e) {
    return {exit_code_for(e.kind()), {},
            "error (" + std::string(to_string(e.kind())) + "): " + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {kExitComputeError, {}, std::string("error: ") + e.what() + "\n"};
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string samples_csv(std::span<const MeasureSample> samples) {
  std::string out = kSampleHeader;
  out += '\n';
  for (const auto& s : samples) {
    out += format_number(s.gamma_t) + ',' + format_number(s.g_ab) + ',' + format_number(s.g_ba) +
           ',' + format_number(s.g_delta) + ',' + format_number(s.e2) + '\n';
  }
  return out;
}

std::string samples_json(std::span<const MeasureSample> samples) {
  json arr = json::array();
  for (const auto& s : samples) {
    arr.push_back({{"gamma_t", rounded(s.gamma_t)},
                   {"g_ab", rounded(s.g_ab)},
                   {"g_ba", rounded(s.g_ba)},
                   {"g_delta", rounded(s.g_delta)},
                   {"e2", rounded(s.e2)},
                   {"steering", gaussian::to_string(s.steering)}});
  }
  return dump(arr);
}

}  // namespace optosteer::cli
