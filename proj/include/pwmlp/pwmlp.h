/*
 * C interface to the pwmlp library: constructs one-hidden-layer perceptrons
 * that reproduce piecewise constant, linear and cubic approximants of a
 * sampled function, and checks them against kernel-sum reference models.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Every fallible call returns a pwmlp_status; on failure the message is
 * available from pwmlp_last_error() on the calling thread until the next
 * failing call there. Handles are immutable after creation and may be shared
 * between threads for read-only calls.
 */
#ifndef PWMLP_H
#define PWMLP_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(PWMLP_BUILDING_LIBRARY)
#define PWMLP_API __declspec(dllexport)
#else
#define PWMLP_API __declspec(dllimport)
#endif
#else
#define PWMLP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pwmlp_status {
  PWMLP_OK = 0,
  PWMLP_ERR_DOMAIN = 1,    /* argument outside the mathematical domain */
  PWMLP_ERR_USAGE = 2,     /* precondition violated (size, parity, shape) */
  PWMLP_ERR_FORMAT = 3,    /* malformed model or CSV document */
  PWMLP_ERR_NUMERICAL = 4, /* factorization failure or non-finite result */
  PWMLP_ERR_IO = 5,        /* file could not be read or written */
  PWMLP_ERR_INTERNAL = 6   /* unexpected failure (allocation, bug) */
} pwmlp_status;

typedef struct pwmlp_samples pwmlp_samples;
typedef struct pwmlp_network pwmlp_network;
typedef struct pwmlp_report pwmlp_report;
typedef struct pwmlp_kernel_fit pwmlp_kernel_fit;

typedef struct pwmlp_equivalence {
  int passed;
  double max_deviation;
  double worst_x;
  size_t worst_output;
} pwmlp_equivalence;

PWMLP_API const char* pwmlp_version(void);
PWMLP_API const char* pwmlp_last_error(void);
PWMLP_API const char* pwmlp_status_name(pwmlp_status status);

/* Registries. Names are static strings; index past the end returns NULL. */
PWMLP_API size_t pwmlp_method_count(void);
PWMLP_API const char* pwmlp_method_name(size_t index);
PWMLP_API size_t pwmlp_target_count(void);
PWMLP_API const char* pwmlp_target_name(size_t index);
PWMLP_API const char* pwmlp_target_formula(size_t index);
PWMLP_API double pwmlp_default_inflection_slope(void);

/* Knot samples f_k(x_j), j = 0..n, k = 0..q-1. */
PWMLP_API pwmlp_status pwmlp_samples_from_target(const char* target, int n, pwmlp_samples** out);
/* values is (n + 1) x q, row-major. */
PWMLP_API pwmlp_status pwmlp_samples_from_values(int n, size_t q, const double* values, pwmlp_samples** out);
/* CSV "x,f1,...,fq" with header; expected_n <= 0 accepts any row count. */
PWMLP_API pwmlp_status pwmlp_samples_read_csv(const char* path, int expected_n, pwmlp_samples** out);
PWMLP_API int pwmlp_samples_n(const pwmlp_samples* samples);
PWMLP_API size_t pwmlp_samples_output_dim(const pwmlp_samples* samples);
/* Largest |f| over all samples. */
PWMLP_API double pwmlp_samples_max_abs(const pwmlp_samples* samples);
PWMLP_API void pwmlp_samples_free(pwmlp_samples* samples);

/* method: constant | linear-relu | linear-ramp | cubic | cubic-spaced.
   slope is the cubic inflection slope in [0, 0.75], ignored otherwise. */
PWMLP_API pwmlp_status pwmlp_build(const char* method, const pwmlp_samples* samples, double slope,
                                   pwmlp_network** out);
PWMLP_API pwmlp_status pwmlp_network_load(const char* path, pwmlp_network** out);
PWMLP_API pwmlp_status pwmlp_network_load_string(const char* document, size_t length, pwmlp_network** out);
PWMLP_API pwmlp_status pwmlp_network_save(const pwmlp_network* net, const char* path);
PWMLP_API size_t pwmlp_network_hidden_size(const pwmlp_network* net);
PWMLP_API size_t pwmlp_network_output_dim(const pwmlp_network* net);
PWMLP_API int pwmlp_network_n(const pwmlp_network* net);
PWMLP_API const char* pwmlp_network_method(const pwmlp_network* net);
/* Tap weights of output k; NULL when k is out of range. Length is hidden_size. */
PWMLP_API const double* pwmlp_network_tap_weights(const pwmlp_network* net, size_t k);
PWMLP_API double pwmlp_network_tap_bias(const pwmlp_network* net, size_t k);
/* out must hold output_dim values. */
PWMLP_API pwmlp_status pwmlp_network_forward(const pwmlp_network* net, double x, double* out, size_t out_len);
/* out must hold count * output_dim values, row-major. */
PWMLP_API pwmlp_status pwmlp_network_forward_grid(const pwmlp_network* net, const double* xs, size_t count,
                                                  double* out, size_t out_len);
PWMLP_API void pwmlp_network_free(pwmlp_network* net);

/* Builds the network for method and the reference model for oracle_method
   (NULL: the matching one) and compares them on grid_size uniform points. */
PWMLP_API pwmlp_status pwmlp_verify(const char* method, const pwmlp_samples* samples, double slope,
                                    size_t grid_size, double tol, const char* oracle_method,
                                    pwmlp_equivalence* out);

/* Convergence sweep of method on a builtin target over increasing N. */
PWMLP_API pwmlp_status pwmlp_convergence(const char* method, const char* target, const int* n_values,
                                         size_t count, size_t grid_size, double slope, pwmlp_report** out);
PWMLP_API size_t pwmlp_report_size(const pwmlp_report* report);
PWMLP_API int pwmlp_report_n(const pwmlp_report* report, size_t i);
PWMLP_API double pwmlp_report_sup_error(const pwmlp_report* report, size_t i);
PWMLP_API double pwmlp_report_l2_error(const pwmlp_report* report, size_t i);
/* 0 when the target is reproduced exactly and no order is fitted. */
PWMLP_API int pwmlp_report_order_applicable(const pwmlp_report* report);
/* NaN when not applicable. */
PWMLP_API double pwmlp_report_fitted_order(const pwmlp_report* report);
PWMLP_API double pwmlp_report_r_squared(const pwmlp_report* report);
PWMLP_API pwmlp_status pwmlp_report_write_csv(const pwmlp_report* report, const char* path);
PWMLP_API pwmlp_status pwmlp_report_write_json(const pwmlp_report* report, const char* path);
PWMLP_API void pwmlp_report_free(pwmlp_report* report);

/* kernel: box | triangle | bump (cubic bump with the given slope). */
PWMLP_API pwmlp_status pwmlp_fit_kernel(const char* kernel, double slope, int n, const double* xs,
                                        const double* ys, size_t count, pwmlp_kernel_fit** out);
/* Dense CSV "x,y" with header. */
PWMLP_API pwmlp_status pwmlp_fit_kernel_csv(const char* kernel, double slope, int n, const char* csv_path,
                                            pwmlp_kernel_fit** out);
PWMLP_API size_t pwmlp_kernel_fit_size(const pwmlp_kernel_fit* fit);
PWMLP_API const double* pwmlp_kernel_fit_omega(const pwmlp_kernel_fit* fit);
PWMLP_API double pwmlp_kernel_fit_rms_residual(const pwmlp_kernel_fit* fit);
PWMLP_API pwmlp_status pwmlp_kernel_fit_write_json(const pwmlp_kernel_fit* fit, const char* path);
PWMLP_API void pwmlp_kernel_fit_free(pwmlp_kernel_fit* fit);

/* Shortest round-trip decimal of v into buf, NUL-terminated. Returns the
   length excluding the NUL, or 0 when buf is too small (32 always suffices). */
PWMLP_API size_t pwmlp_format_double(double v, char* buf, size_t len);

#ifdef __cplusplus
}
#endif

#endif /* PWMLP_H */
