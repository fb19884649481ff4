#include "optosteer/optosteer.h"

#include <cstring>
#include <exception>
#include <string>

#include "optosteer/config.hpp"
#include "optosteer/dynamics.hpp"
#include "optosteer/error.hpp"
#include "optosteer/gaussian.hpp"
#include "optosteer/runner.hpp"
#include "optosteer/scenario.hpp"

struct ost_config {
  optosteer::cli::RunConfig config;
};

struct ost_result {
  optosteer::cli::RunOutput output;
};

namespace {

using optosteer::Error;
using optosteer::ErrorKind;
namespace gaussian = optosteer::gaussian;

thread_local std::string last_error;

ost_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return OST_ERR_INVALID_INPUT;
    case ErrorKind::NonPhysicalState: return OST_ERR_NON_PHYSICAL_STATE;
    case ErrorKind::UnsupportedForm: return OST_ERR_UNSUPPORTED_FORM;
    case ErrorKind::UnsupportedConfiguration: return OST_ERR_UNSUPPORTED_CONFIGURATION;
    case ErrorKind::IntegrationError: return OST_ERR_INTEGRATION;
    case ErrorKind::ConfigError: return OST_ERR_CONFIG;
  }
  return OST_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into a status and the thread-local message.
template <typename F>
ost_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return OST_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return OST_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return OST_ERR_INTERNAL;
  }
}

ost_status null_argument(const char* name) {
  last_error = std::string(name) + " is NULL";
  return OST_ERR_NULL_ARGUMENT;
}

gaussian::Matrix4 load(const double cm[16]) {
  gaussian::Matrix4 m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = cm[4 * i + j];
  return m;
}

void store(const gaussian::Matrix4& m, double out[16]) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = m(i, j);
}

optosteer::model::ReducedParams convert(const ost_reduced_params& p) {
  optosteer::model::ReducedParams rp;
  rp.c1 = p.c1;
  rp.c2 = p.c2;
  rp.nth1 = p.nth1;
  rp.nth2 = p.nth2;
  rp.r = p.r;
  rp.gamma = p.gamma;
  rp.validate();
  return rp;
}

ost_steering_class convert(gaussian::SteeringClass c) {
  switch (c) {
    case gaussian::SteeringClass::NoWay: return OST_STEERING_NO_WAY;
    case gaussian::SteeringClass::OneWayAToB: return OST_STEERING_ONE_WAY_A_TO_B;
    case gaussian::SteeringClass::OneWayBToA: return OST_STEERING_ONE_WAY_B_TO_A;
    case gaussian::SteeringClass::TwoWay: return OST_STEERING_TWO_WAY;
  }
  return OST_STEERING_NO_WAY;
}

template <typename Measure>
ost_status scalar_measure(const double cm[16], double* out, Measure measure) {
  if (cm == nullptr) return null_argument("cm");
  if (out == nullptr) return null_argument("out");
  return guarded([&] { *out = measure(gaussian::TwoModeCovariance::from_matrix(load(cm))); });
}

}  // namespace

extern "C" {

const char* ost_version(void) { return "1.0.0"; }

const char* ost_status_string(ost_status status) {
  switch (status) {
    case OST_OK: return "ok";
    case OST_ERR_INVALID_INPUT: return "invalid input";
    case OST_ERR_NON_PHYSICAL_STATE: return "non-physical state";
    case OST_ERR_UNSUPPORTED_FORM: return "unsupported covariance form";
    case OST_ERR_UNSUPPORTED_CONFIGURATION: return "unsupported configuration";
    case OST_ERR_INTEGRATION: return "integration error";
    case OST_ERR_CONFIG: return "configuration error";
    case OST_ERR_NULL_ARGUMENT: return "null argument";
    case OST_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ost_last_error(void) { return last_error.c_str(); }

ost_status ost_validate_cm(const double cm[16], ost_validity* out) {
  if (cm == nullptr) return null_argument("cm");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto v = gaussian::validate_cm(load(cm));
    *out = {v.symmetric ? 1 : 0, v.positive_definite ? 1 : 0, v.bona_fide ? 1 : 0, v.nu_minus,
            v.nu_plus};
  });
}

ost_status ost_steering_a_to_b(const double cm[16], double* out) {
  return scalar_measure(cm, out, gaussian::steering_a_to_b);
}

ost_status ost_steering_b_to_a(const double cm[16], double* out) {
  return scalar_measure(cm, out, gaussian::steering_b_to_a);
}

ost_status ost_steering_asymmetry(const double cm[16], double* out) {
  return scalar_measure(cm, out, gaussian::steering_asymmetry);
}

ost_status ost_renyi2_entanglement(const double cm[16], double* out) {
  return scalar_measure(cm, out, gaussian::renyi2_entanglement);
}

ost_status ost_classify_steering(const double cm[16], double epsilon, ost_steering_class* out) {
  if (cm == nullptr) return null_argument("cm");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = convert(gaussian::classify_steering(
        gaussian::TwoModeCovariance::from_matrix(load(cm)), epsilon));
  });
}

ost_status ost_covariance_closed_form(const ost_reduced_params* params, double gamma_t,
                                      double out[16]) {
  if (params == nullptr) return null_argument("params");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    store(optosteer::dynamics::covariance_closed_form(convert(*params), gamma_t).matrix(), out);
  });
}

ost_status ost_stationary_covariance(const ost_reduced_params* params, double out[16]) {
  if (params == nullptr) return null_argument("params");
  if (out == nullptr) return null_argument("out");
  return guarded(
      [&] { store(optosteer::dynamics::stationary_covariance(convert(*params)).matrix(), out); });
}

ost_status ost_sweep_time(const ost_reduced_params* params, const double* grid, size_t n,
                          double epsilon, ost_measure_sample* out) {
  if (params == nullptr) return null_argument("params");
  if (n > 0 && grid == nullptr) return null_argument("grid");
  if (n > 0 && out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto samples =
        optosteer::scenario::sweep_time(convert(*params), std::span<const double>(grid, n), epsilon);
    for (size_t i = 0; i < n; ++i) {
      const auto& s = samples[i];
      out[i] = {s.gamma_t, s.g_ab, s.g_ba, s.g_delta, s.e2, convert(s.steering)};
    }
  });
}

ost_status ost_config_parse(const char* text, const char* const* override_keys,
                            const char* const* override_values, size_t n_overrides,
                            ost_config** out) {
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  if (n_overrides > 0 && (override_keys == nullptr || override_values == nullptr)) {
    return null_argument("overrides");
  }
  return guarded([&] {
    optosteer::cli::Overrides overrides;
    for (size_t i = 0; i < n_overrides; ++i) {
      if (override_keys[i] == nullptr || override_values[i] == nullptr) {
        throw Error(ErrorKind::InvalidInput, "override entries must not be NULL");
      }
      overrides[override_keys[i]] = override_values[i];
    }
    auto cfg = optosteer::cli::parse_config(text ? text : "", overrides);
    *out = new ost_config{std::move(cfg)};
  });
}

void ost_config_free(ost_config* config) { delete config; }

ost_status ost_config_render(const ost_config* config, char** out) {
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const std::string text = optosteer::cli::render_config(config->config);
    char* buf = new char[text.size() + 1];
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

const char* ost_config_output_path(const ost_config* config) {
  if (config == nullptr || !config->config.output_path) return nullptr;
  return config->config.output_path->c_str();
}

void ost_string_free(char* s) { delete[] s; }

ost_status ost_run(const ost_config* config, ost_result** out) {
  if (config == nullptr) return null_argument("config");
  if (out == nullptr) return null_argument("out");
  *out = nullptr;
  return guarded([&] { *out = new ost_result{optosteer::cli::run(config->config)}; });
}

int ost_result_exit_code(const ost_result* result) {
  return result ? result->output.exit_code : optosteer::cli::kExitComputeError;
}

const char* ost_result_data(const ost_result* result) {
  return result ? result->output.data.c_str() : "";
}

size_t ost_result_data_size(const ost_result* result) {
  return result ? result->output.data.size() : 0;
}

const char* ost_result_diagnostics(const ost_result* result) {
  return result ? result->output.diagnostics.c_str() : "";
}

void ost_result_free(ost_result* result) { delete result; }

}  // extern "C"
