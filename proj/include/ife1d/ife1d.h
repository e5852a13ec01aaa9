/* SPDX-License-Identifier: Apache-2.0 */
#ifndef IFE1D_H
#define IFE1D_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(IFE1D_BUILDING_LIBRARY)
#    define IFE1D_API __declspec(dllexport)
#  else
#    define IFE1D_API __declspec(dllimport)
#  endif
#else
#  define IFE1D_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ife1d_status {
  IFE1D_OK = 0,
  IFE1D_ERR_INVALID_ARGUMENT = 1,
  IFE1D_ERR_INTERFACE_ON_NODE = 2,
  IFE1D_ERR_DOMAIN = 3,
  IFE1D_ERR_INDEX = 4,
  IFE1D_ERR_SINGULAR = 5,
  IFE1D_ERR_CONFIG = 6,
  IFE1D_ERR_SOLVER = 7,
  IFE1D_ERR_IO = 8,
  IFE1D_ERR_INTERNAL = 99
} ife1d_status;

typedef struct ife1d_mesh ife1d_mesh;
typedef struct ife1d_rife ife1d_rife;

IFE1D_API const char* ife1d_version(void);

/* Message for the most recent failure on the calling thread; empty after success. */
IFE1D_API const char* ife1d_last_error(void);

/* Uniform mesh of [a, b] with n elements and `count` interface points. */
IFE1D_API ife1d_status ife1d_mesh_create(double a, double b, int n, const double* interfaces, size_t count,
                                         ife1d_mesh** out);
IFE1D_API void ife1d_mesh_destroy(ife1d_mesh* mesh);
IFE1D_API ife1d_status ife1d_mesh_num_elements(const ife1d_mesh* mesh, int* out);
IFE1D_API ife1d_status ife1d_mesh_num_interfaces(const ife1d_mesh* mesh, size_t* out);
/* Element index is 1-based; alpha_hat is the interface position on the reference element. */
IFE1D_API ife1d_status ife1d_mesh_interface(const ife1d_mesh* mesh, size_t index, int* element, double* alpha_hat);

/* Reference IFE function of the given degree with jump coefficients r[0..degree]. */
IFE1D_API ife1d_status ife1d_rife_create(int degree, double alpha_hat, const double* r, const double* coeffs,
                                         ife1d_rife** out);
IFE1D_API ife1d_status ife1d_rife_canonical(int degree, double alpha_hat, const double* r, int k, ife1d_rife** out);
IFE1D_API void ife1d_rife_destroy(ife1d_rife* f);
/* k-th derivative at x; at the interface the left limit is returned. */
IFE1D_API ife1d_status ife1d_rife_eval(const ife1d_rife* f, double x, int k, double* out);
IFE1D_API ife1d_status ife1d_rife_count_roots(const ife1d_rife* f, int grid, int* out);

IFE1D_API ife1d_status ife1d_boundary_ratio_j(int degree, double alpha_hat, double w_minus, double w_plus,
                                              const double* r, double* out);

/* Writes m+1 pressure and velocity jump coefficients. */
IFE1D_API ife1d_status ife1d_jump_coefficients(int m, double rho_minus, double rho_plus, double c_minus,
                                               double c_plus, double* r_pressure, double* r_velocity);

/* Runs a named experiment. config_json may be NULL or empty for defaults. A config "seed" is used
   unless override_seed is nonzero. */
IFE1D_API ife1d_status ife1d_run_experiment(const char* name, const char* config_json, const char* out_dir,
                                            uint64_t seed, int override_seed, int threads);

/* Newline-separated experiment names; valid for the lifetime of the library. */
IFE1D_API const char* ife1d_experiment_names(void);

#ifdef __cplusplus
}
#endif

#endif
