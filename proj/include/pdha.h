/* C interface to the position-deformed Heisenberg algebra library.
 *
 * All functions return PDHA_OK on success; on failure they return an error
 * code and leave a message retrievable with pdha_last_error() (thread-local).
 * Objects created by *_create functions are released with the matching
 * *_free function. Output buffers are caller-allocated unless noted.
 */
#ifndef PDHA_H
#define PDHA_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdha_status {
  PDHA_OK = 0,
  PDHA_ERR_INVALID_ARGUMENT = 1,
  PDHA_ERR_DOMAIN = 2,
  PDHA_ERR_UNSUPPORTED_GRID = 3,
  PDHA_ERR_INTERNAL = 4
} pdha_status;

typedef enum pdha_spacing_mode {
  PDHA_UNIFORM_IN_U = 0,
  PDHA_UNIFORM_IN_X = 1
} pdha_spacing_mode;

typedef enum pdha_picture {
  PDHA_CAPITAL_PHI = 0,
  PDHA_SMALL_PHI = 1
} pdha_picture;

typedef enum pdha_time_kind {
  PDHA_REAL_TIME = 0,
  PDHA_EUCLIDEAN = 1
} pdha_time_kind;

typedef enum pdha_kernel_convention {
  PDHA_BARE_FORM = 0,
  PDHA_MEASURE_CONSISTENT = 1
} pdha_kernel_convention;

typedef struct pdha_params pdha_params;
typedef struct pdha_grid pdha_grid;
typedef struct pdha_kernel pdha_kernel;
typedef struct pdha_trajectory pdha_trajectory;

/* Message describing the most recent failure on this thread. */
const char* pdha_last_error(void);

/* Frees strings returned through char** out-parameters. */
void pdha_string_free(char* s);

/* ---- deformation parameters -------------------------------------------- */

pdha_status pdha_params_create(double tau, double hbar, double mass, pdha_params** out);
void pdha_params_free(pdha_params* p);

typedef struct pdha_params_info {
  double tau;
  double hbar;
  double mass;
  double ell_max;
  double delta_p_min;
  double u_min;
  double u_max;
} pdha_params_info;

pdha_status pdha_params_get(const pdha_params* p, pdha_params_info* out);

pdha_status pdha_deformation_factor(const pdha_params* p, double x, double* out);
pdha_status pdha_u_of_x(const pdha_params* p, double x, double* out);
pdha_status pdha_x_of_u(const pdha_params* p, double u, double* out);
pdha_status pdha_normalization_constant(const pdha_params* p, double* out);

/* Fills out[0 .. n_hi-n_lo] with xi_n = tau*hbar*sqrt(3)*n. */
pdha_status pdha_momentum_lattice(const pdha_params* p, int n_lo, int n_hi, double* out);

/* Phi_xi at the given positions. */
pdha_status pdha_eigenfunction_eval(const pdha_params* p, double xi, const double* xs,
                                    size_t count, double* out_re, double* out_im);

/* <Phi_xi'|Phi_xi> in closed form over the full domain. */
pdha_status pdha_overlap(const pdha_params* p, double xi, double xi_prime, double* out_re,
                         double* out_im);

/* The printed sinc form of the overlap (real; zero set differs by factor 2). */
pdha_status pdha_overlap_sinc_form(const pdha_params* p, double delta_xi, double* out);

/* ---- grids and quadrature ---------------------------------------------- */

pdha_status pdha_grid_create(const pdha_params* p, int n, pdha_spacing_mode mode,
                             pdha_grid** out);
pdha_status pdha_grid_create_windowed(const pdha_params* p, int n, pdha_spacing_mode mode,
                                      double x_lo, double x_hi, pdha_grid** out);
void pdha_grid_free(pdha_grid* g);

int pdha_grid_size(const pdha_grid* g);

/* Copies node data into the provided buffers (each of grid size, or NULL). */
pdha_status pdha_grid_nodes(const pdha_grid* g, double* x, double* u, double* w_flat,
                            double* w_deformed);

pdha_status pdha_grid_integrate_flat(const pdha_grid* g, const double* re, const double* im,
                                     double* out_re, double* out_im);
pdha_status pdha_grid_integrate_deformed(const pdha_grid* g, const double* re,
                                         const double* im, double* out_re, double* out_im);

/* Phi_xi sampled on the grid nodes. */
pdha_status pdha_grid_eigenfunction(const pdha_grid* g, double xi, double* out_re,
                                    double* out_im);

/* Piecewise-exact overlap evaluated on the grid's u-intervals. */
pdha_status pdha_grid_overlap(const pdha_grid* g, double xi, double xi_prime, double* out_re,
                              double* out_im);

/* ---- generalized Fourier transform ------------------------------------- */

pdha_status pdha_forward_transform(const pdha_grid* g, const double* psi_re,
                                   const double* psi_im, pdha_picture picture,
                                   const double* xi, size_t nxi, double* out_re,
                                   double* out_im);

/* Output buffers have grid size; the result is in the capital-Phi picture. */
pdha_status pdha_inverse_transform(const pdha_grid* g, const double* xi, const double* f_re,
                                   const double* f_im, size_t nxi, double* out_re,
                                   double* out_im);

pdha_status pdha_parseval_ratio(const pdha_grid* g, const double* psi_re,
                                const double* psi_im, pdha_picture picture, const double* xi,
                                const double* f_re, const double* f_im, size_t nxi,
                                double* out);

/* ---- free-particle closed forms ----------------------------------------- */

pdha_status pdha_free_propagator(const pdha_params* p, double x, double x_prime,
                                 double delta_t, pdha_time_kind kind,
                                 pdha_kernel_convention convention, double* out_re,
                                 double* out_im);
pdha_status pdha_free_action(const pdha_params* p, double x, double x_prime, double delta_t,
                             double* out);
pdha_status pdha_free_kinetic(const pdha_params* p, double x, double x_prime, double delta_t,
                              double* out);
pdha_status pdha_standard_baseline(const pdha_params* p, double x, double x_prime,
                                   double delta_t, pdha_time_kind kind, double* kernel_re,
                                   double* kernel_im, double* action, double* kinetic);

/* ---- kernels ------------------------------------------------------------ */

pdha_status pdha_kernel_free_closed(const pdha_grid* g, double delta_t, pdha_time_kind kind,
                                    pdha_kernel_convention convention, pdha_kernel** out);

/* Euclidean split-step propagator; potential has grid size (NULL = free).
 * symmetric != 0 selects the second-order split. */
pdha_status pdha_kernel_timeslice(const pdha_grid* g, const double* potential, double delta_t,
                                  int slices, int symmetric, pdha_kernel** out);

/* Eigendecomposition propagator; delta_t may be negative for real time. */
pdha_status pdha_kernel_spectral(const pdha_grid* g, const double* potential, double delta_t,
                                 pdha_time_kind kind, pdha_kernel** out);

void pdha_kernel_free(pdha_kernel* k);
pdha_status pdha_kernel_entry(const pdha_kernel* k, int i, int j, double* out_re,
                              double* out_im);
pdha_status pdha_kernel_compose(const pdha_kernel* a, const pdha_kernel* b, pdha_kernel** out);

/* Momentum-side propagator value for one (xi, xi') pair. */
pdha_status pdha_ft_propagator(const pdha_kernel* k, double xi, double xi_prime,
                               double* out_re, double* out_im);

/* JSON array of {x, x_prime, s_def, s_std, t_def, t_std, k_def, k_std,
 * pass_action_bound} over all pairs from xs. Free with pdha_string_free. */
pdha_status pdha_bound_scan_json(const pdha_params* p, const double* xs, size_t count,
                                 double delta_t, char** out_json);

/* ---- classical dynamics ------------------------------------------------- */

/* Integrates the deformed Hamilton equations for V(x) = sum_k c_k x^k. */
pdha_status pdha_trajectory_integrate(const pdha_params* p, const double* poly_coeffs,
                                      size_t ncoeff, double x0, double xi0, double t_end,
                                      double dt, pdha_trajectory** out);
void pdha_trajectory_free(pdha_trajectory* t);
size_t pdha_trajectory_size(const pdha_trajectory* t);
int pdha_trajectory_boundary_event(const pdha_trajectory* t);

/* Copies columns (t, x, xi, u, h) into the provided buffers (or NULL). */
pdha_status pdha_trajectory_data(const pdha_trajectory* t, double* time, double* x, double* xi,
                                 double* u, double* h);
pdha_status pdha_trajectory_action(const pdha_trajectory* t, double* out);
pdha_status pdha_trajectory_energy_drift(const pdha_trajectory* t, double* out);

/* ---- verification -------------------------------------------------------- */

/* Runs the verification suite. config_json may be NULL/"{}" for defaults, or
 * an object with any of: tau, hbar, mass, n, delta_t, slices, interior_depth,
 * tolerances (object label -> value). The report is a JSON object with
 * all_pass and per-check entries. Free the report with pdha_string_free. */
pdha_status pdha_verify_run(const char* config_json, char** out_report_json,
                            int* out_all_pass);

#ifdef __cplusplus
}
#endif

#endif /* PDHA_H */
