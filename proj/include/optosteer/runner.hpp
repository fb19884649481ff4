#pragma once

#include <span>
#include <string>

#include "optosteer/config.hpp"
#include "optosteer/error.hpp"
#include "optosteer/scenario.hpp"

namespace optosteer::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitComputeError = 2;

/// ConfigError -> 1, everything else -> 2.
int exit_code_for(ErrorKind kind) noexcept;

struct RunOutput {
  int exit_code = kExitOk;
  std::string data;         // dataset or report, empty on failure
  std::string diagnostics;  // human-readable, never mixed into data
};

/// Executes one mode. Never throws; failures are reported through the exit
/// code and diagnostics.
RunOutput run(const RunConfig& config);

inline constexpr const char* kSampleHeader = "gamma_t,g_ab,g_ba,g_delta,e2";

/// 12 significant digits, "%.12g".
std::string format_number(double v);
std::string samples_csv(std::span<const scenario::MeasureSample> samples);
std::string samples_json(std::span<const scenario::MeasureSample> samples);

}  // namespace optosteer::cli
