/*
 * C interface to the optosteer library.
 *
 * Covariance matrices are passed as 16 doubles in row-major order, basis
 * (q_A, p_A, q_B, p_B), vacuum variance 1/2. Every call returns an
 * ost_status; on failure a message for the calling thread is available from
 * ost_last_error(). Handles are opaque and owned by the caller, who releases
 * them with the matching *_free function.
 */
#ifndef OPTOSTEER_H
#define OPTOSTEER_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(OPTOSTEER_BUILDING)
#    define OST_API __declspec(dllexport)
#  else
#    define OST_API __declspec(dllimport)
#  endif
#else
#  define OST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ost_status {
  OST_OK = 0,
  OST_ERR_INVALID_INPUT = 1,
  OST_ERR_NON_PHYSICAL_STATE = 2,
  OST_ERR_UNSUPPORTED_FORM = 3,
  OST_ERR_UNSUPPORTED_CONFIGURATION = 4,
  OST_ERR_INTEGRATION = 5,
  OST_ERR_CONFIG = 6,
  OST_ERR_NULL_ARGUMENT = 7,
  OST_ERR_INTERNAL = 8
} ost_status;

typedef enum ost_steering_class {
  OST_STEERING_NO_WAY = 0,
  OST_STEERING_ONE_WAY_A_TO_B = 1,
  OST_STEERING_ONE_WAY_B_TO_A = 2,
  OST_STEERING_TWO_WAY = 3
} ost_steering_class;

typedef struct ost_reduced_params {
  double c1, c2;     /* cooperativities */
  double nth1, nth2; /* thermal occupations */
  double r;          /* squeezing */
  double gamma;      /* mechanical damping, rad/s */
} ost_reduced_params;

typedef struct ost_validity {
  int symmetric;
  int positive_definite;
  int bona_fide;
  double nu_minus;
  double nu_plus;
} ost_validity;

typedef struct ost_measure_sample {
  double gamma_t;
  double g_ab;
  double g_ba;
  double g_delta;
  double e2;
  ost_steering_class steering;
} ost_measure_sample;

typedef struct ost_config ost_config;
typedef struct ost_result ost_result;

OST_API const char* ost_version(void);
OST_API const char* ost_status_string(ost_status status);
/* Message of the last failed call on this thread; "" if none. */
OST_API const char* ost_last_error(void);

/* Gaussian measures. */
OST_API ost_status ost_validate_cm(const double cm[16], ost_validity* out);
OST_API ost_status ost_steering_a_to_b(const double cm[16], double* out);
OST_API ost_status ost_steering_b_to_a(const double cm[16], double* out);
OST_API ost_status ost_steering_asymmetry(const double cm[16], double* out);
OST_API ost_status ost_renyi2_entanglement(const double cm[16], double* out);
OST_API ost_status ost_classify_steering(const double cm[16], double epsilon,
                                         ost_steering_class* out);

/* Dynamics; times are dimensionless gamma*t. */
OST_API ost_status ost_covariance_closed_form(const ost_reduced_params* params, double gamma_t,
                                              double out[16]);
OST_API ost_status ost_stationary_covariance(const ost_reduced_params* params, double out[16]);
/* Writes n samples into out (caller-allocated). */
OST_API ost_status ost_sweep_time(const ost_reduced_params* params, const double* grid, size_t n,
                                  double epsilon, ost_measure_sample* out);

/* Configuration. Overrides are "section.key" / value pairs applied on top of
 * the document, e.g. {"run.mode", "figure"}. text may be NULL or empty. */
OST_API ost_status ost_config_parse(const char* text, const char* const* override_keys,
                                    const char* const* override_values, size_t n_overrides,
                                    ost_config** out);
OST_API void ost_config_free(ost_config* config);
/* Canonical document; release with ost_string_free. */
OST_API ost_status ost_config_render(const ost_config* config, char** out);
/* Output path from [output] path, or NULL when data goes to standard output. */
OST_API const char* ost_config_output_path(const ost_config* config);
OST_API void ost_string_free(char* s);

/* Runs the configured mode. A result is produced even when the run fails;
 * inspect its exit code (0 ok, 1 configuration error, 2 computational error). */
OST_API ost_status ost_run(const ost_config* config, ost_result** out);
OST_API int ost_result_exit_code(const ost_result* result);
OST_API const char* ost_result_data(const ost_result* result);
OST_API size_t ost_result_data_size(const ost_result* result);
OST_API const char* ost_result_diagnostics(const ost_result* result);
OST_API void ost_result_free(ost_result* result);

#ifdef __cplusplus
}
#endif

#endif /* OPTOSTEER_H */
