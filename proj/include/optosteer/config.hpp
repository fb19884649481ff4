#pragma once

// Run configuration read from a flat-sectioned key-value document:
//
//   [reduced]            ; or [physical], never both
//   c1 = 15
//   ...
//   [run]
//   mode = sweep
//   [output]
//   format = csv
//
// Frequencies are entered in Hz and multiplied by 2*pi internally. Unknown
// sections and keys are rejected.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "optosteer/model.hpp"

namespace optosteer::cli {

enum class Mode { Eval, Sweep, Figure, Regime, Stationary };
enum class OutputFormat { Csv, Json };
enum class TimeUnit { GammaT, Seconds };
enum class Solver { ClosedForm, Ode };

std::string_view to_string(Mode m) noexcept;
std::string_view to_string(OutputFormat f) noexcept;
std::string_view to_string(TimeUnit u) noexcept;
std::string_view to_string(Solver s) noexcept;

/// [reduced] block.
struct ReducedInput {
  double c1 = 0.0;
  double c2 = 0.0;
  double nth1 = 0.0;
  double nth2 = 0.0;
  double r = 0.0;
  double gamma_hz = 0.0;

  model::ReducedParams to_params() const;
  bool operator==(const ReducedInput&) const = default;
};

/// [physical] block, per-cavity keys suffixed _1 / _2.
struct PhysicalInput {
  struct Cavity {
    double cavity_frequency_hz = 0.0;
    double laser_frequency_hz = 0.0;
    double cavity_length_m = 0.0;
    double cavity_decay_hz = 0.0;
    double laser_power_w = 0.0;
    std::optional<double> effective_detuning_hz;
    double mirror_mass_kg = 0.0;
    double mechanical_frequency_hz = 0.0;
    double mechanical_damping_hz = 0.0;
    std::optional<double> temperature_k;
    std::optional<double> thermal_occupation;

    bool operator==(const Cavity&) const = default;
  };
  std::array<Cavity, 2> cavity;
  double r = 0.0;

  model::PhysicalParams to_params() const;
  bool operator==(const PhysicalInput&) const = default;
};

struct GridSpec {
  double start = 0.0;
  double end = 5.0;
  std::size_t points = 1001;

  bool operator==(const GridSpec&) const = default;
};

struct RunConfig {
  Mode mode = Mode::Sweep;
  std::variant<std::monostate, PhysicalInput, ReducedInput> params;
  std::optional<std::string> panel;
  GridSpec grid;
  TimeUnit time_unit = TimeUnit::GammaT;
  double eval_time = 0.0;
  double epsilon = 1e-9;
  double regime_threshold = 5.0;
  Solver solver = Solver::ClosedForm;
  double ode_step = 1e-4;
  OutputFormat format = OutputFormat::Csv;
  std::optional<std::string> output_path;

  bool operator==(const RunConfig&) const = default;
};

/// Flag overrides keyed by "section.key", applied on top of the document.
using Overrides = std::map<std::string, std::string>;

/// Throws Error(ConfigError) naming the offending key path.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Canonical document for `config`; parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

}  // namespace optosteer::cli
