/* lpsteiner: L_p Steiner expansions, affine surface areas and curvature
 * measures of convex bodies, behind a C ABI.
 *
 * All entry points return lps_status; results travel through out-pointers.
 * On failure the thread-local message from lps_last_error() names the
 * offending parameter or node. Handles are opaque and freed with the
 * matching *_free function; every handle is immutable after creation and
 * safe to share across threads.
 */
#ifndef LPSTEINER_H
#define LPSTEINER_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32) || defined(__CYGWIN__)
#define LPS_API __declspec(dllexport)
#else
#define LPS_API __attribute__((visibility("default")))
#endif

typedef enum lps_status {
  LPS_OK = 0,
  LPS_ERR_INVALID_ARGUMENT = 1,
  LPS_ERR_P_EQUALS_MINUS_N = 2,
  LPS_ERR_T_OUT_OF_RANGE = 3,
  LPS_ERR_UNSUPPORTED_DIMENSION = 4,
  LPS_ERR_NONCONVEX = 5,
  LPS_ERR_NONFINITE_INTEGRAND = 6,
  LPS_ERR_OVERFLOW = 7,
  LPS_ERR_UNDERFLOW = 8,
  LPS_ERR_NONPOSITIVE_MASS = 9,
  LPS_ERR_ALPHA_ONE = 10,
  LPS_ERR_TRUNCATION_TOO_LARGE = 11,
  LPS_ERR_IO = 12,
  LPS_ERR_UNKNOWN = 99
} lps_status;

/* Exponent parameter p; +-infinity is a distinct symbolic value evaluated
 * through the limit formulas, never as a large finite surrogate. */
typedef enum lps_p_kind { LPS_P_FINITE = 0, LPS_P_POS_INF = 1, LPS_P_NEG_INF = 2 } lps_p_kind;

typedef struct lps_body lps_body;             /* smooth body or polytope */
typedef struct lps_quadrature lps_quadrature; /* sphere quadrature rule */
typedef struct lps_region lps_region;         /* Borel subset of the sphere */
typedef struct lps_grid lps_grid;             /* Steiner expansion grid */

LPS_API const char* lps_version(void);
LPS_API const char* lps_last_error(void);

/* Caps worker threads (0 restores the hardware default). Results do not
 * depend on the cap. */
LPS_API void lps_set_thread_cap(int cap);

/* --- bodies ---------------------------------------------------------- */

LPS_API lps_status lps_body_ball(int n, double radius, lps_body** out);
LPS_API lps_status lps_body_ellipsoid(int n, const double* semi_axes, lps_body** out);
/* vertices: row-major nvertices x n */
LPS_API lps_status lps_body_polytope(int n, const double* vertices, size_t nvertices,
                                     lps_body** out);
LPS_API lps_status lps_body_from_json(const char* json_text, lps_body** out);
/* generic support-function body; the evaluator receives a unit direction of
 * length n and must return a positive support value. fd_step <= 0 selects
 * the default finite-difference step (1e-5). Not reachable from spec files;
 * this is the library-only constructor. */
typedef double (*lps_support_fn)(const double* u, void* ctx);
LPS_API lps_status lps_body_generic(int n, lps_support_fn support, void* ctx, double fd_step,
                                    lps_body** out);
/* outer parallel body K + tB (smooth bodies only) */
LPS_API lps_status lps_body_parallel(const lps_body* body, double t, lps_body** out);
LPS_API void lps_body_free(lps_body* body);

LPS_API lps_status lps_body_dim(const lps_body* body, int* out);
LPS_API lps_status lps_body_is_polytope(const lps_body* body, int* out);
LPS_API lps_status lps_body_support(const lps_body* body, const double* u, double* out);
LPS_API lps_status lps_body_beta(const lps_body* body, double* out);
LPS_API lps_status lps_body_radius_bounds(const lps_body* body, double* lambda, double* Lambda);
LPS_API lps_status lps_body_principal_radii(const lps_body* body, const double* u,
                                            double* out /* n-1 values */);
LPS_API lps_status lps_body_sym_radii(const lps_body* body, const double* u, int j, double* out);
LPS_API lps_status lps_body_h_curvature(const lps_body* body, const double* u, int j, double* out);
LPS_API lps_status lps_body_polar_radial(const lps_body* body, const double* u, double* out);
LPS_API lps_status lps_body_boundary_point(const lps_body* body, const double* u,
                                           double* out /* n values */);

/* --- quadrature ------------------------------------------------------- */

LPS_API lps_status lps_quadrature_build(int n, int level, lps_quadrature** out);
LPS_API void lps_quadrature_free(lps_quadrature* quad);
LPS_API lps_status lps_quadrature_size(const lps_quadrature* quad, size_t* out);
LPS_API lps_status lps_quadrature_weight_sum(const lps_quadrature* quad, double* out);

/* --- sphere regions ---------------------------------------------------- */

LPS_API lps_status lps_region_full(lps_region** out);
LPS_API lps_status lps_region_cap(int n, const double* center, double angle, lps_region** out);
LPS_API lps_status lps_region_sector(double theta0, double theta1, lps_region** out);
/* pullbacks of spatial Borel sets through the reverse Gauss map */
LPS_API lps_status lps_region_halfspace_pullback(const lps_body* body, const double* normal,
                                                 double offset, lps_region** out);
LPS_API lps_status lps_region_ball_pullback(const lps_body* body, const double* center,
                                            double radius, lps_region** out);
LPS_API lps_status lps_region_complement(const lps_region* region, lps_region** out);
LPS_API void lps_region_free(lps_region* region);

/* --- functionals (smooth bodies) --------------------------------------- */

LPS_API lps_status lps_asa(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk,
                           double p, double* out);
LPS_API lps_status lps_mixed_asa(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk,
                                 double p, double s, double* out);
/* as_{-n}: max of f^{1/2} h^{(n+1)/2} with the achieving node index */
LPS_API lps_status lps_neg_n_asa(const lps_body* body, const lps_quadrature* quad, double* value,
                                 size_t* node);
LPS_API lps_status lps_quermass(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk,
                                double p, int m, int k, double* out);
LPS_API lps_status lps_classical_quermass(const lps_body* body, const lps_quadrature* quad, int i,
                                          double* out);
LPS_API lps_status lps_dual_quermass(const lps_body* body, const lps_quadrature* quad, double i,
                                     double* out);
/* S_{m,k}(K, region); pass NULL for the full sphere. The curvature measure
 * C_{m,k}(K, B) is the same sum over the pullback region of B. */
LPS_API lps_status lps_area_measure(const lps_body* body, const lps_quadrature* quad,
                                    lps_p_kind pk, double p, int m, int k,
                                    const lps_region* region, double* out);
LPS_API lps_status lps_curvature_energy(const lps_body* body, const lps_quadrature* quad,
                                        double alpha, double* out);
LPS_API lps_status lps_renyi(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk,
                             double p, int m, int k, double* alpha, double* divergence,
                             double* hellinger);

/* --- Steiner expansion -------------------------------------------------- */

/* region may be NULL (full sphere); a non-NULL region builds the local
 * (masked) S_{m,k} grid */
LPS_API lps_status lps_grid_build(const lps_body* body, const lps_quadrature* quad, lps_p_kind pk,
                                  double p, double s, int M, int Kmax, const lps_region* region,
                                  lps_grid** out);
LPS_API void lps_grid_free(lps_grid* grid);
LPS_API lps_status lps_grid_dims(const lps_grid* grid, int* M, int* Kmax);
LPS_API lps_status lps_grid_entry(const lps_grid* grid, int m, int k, double* out);
LPS_API lps_status lps_grid_beta(const lps_grid* grid, double* out);
LPS_API lps_status lps_grid_eval(const lps_grid* grid, double t, double tail_tol,
                                 int allow_near_beta, double* value, double* tail, int* converged,
                                 int* expansion_flagged);
/* strings are allocated by the library; release with lps_string_free */
LPS_API lps_status lps_grid_to_json(const lps_grid* grid, char** out);
LPS_API lps_status lps_grid_from_json(const char* text, lps_grid** out);
LPS_API lps_status lps_grid_to_csv(const lps_grid* grid, char** out);
LPS_API void lps_string_free(char* s);

/* ground-truth oracle: the functional evaluated on the parallel body */
LPS_API lps_status lps_direct_parallel_asa(const lps_body* body, const lps_quadrature* quad,
                                           lps_p_kind pk, double p, double s, double t,
                                           const lps_region* region, double* out);
LPS_API lps_status lps_series_neg_n(const lps_body* body, const lps_quadrature* quad, int M,
                                    double t, double* value, size_t* node);

/* --- polytope Steiner ---------------------------------------------------- */

/* returns +inf for p in [-n, 0) with s = 0; the p = 0, s = 0 branch is the
 * classical Steiner volume polynomial */
LPS_API lps_status lps_polytope_series(const lps_body* body, double p, double s, int M, double t,
                                       int refine, double* out);
LPS_API lps_status lps_direct_polytope_asa(const lps_body* body, double p, double s, double t,
                                           int refine, double* out);
LPS_API lps_status lps_polytope_steiner_volume(const lps_body* body, double t, double* out);
LPS_API lps_status lps_polytope_vertex_count(const lps_body* body, size_t* out);
LPS_API lps_status lps_polytope_cone_area(const lps_body* body, size_t vertex, double* out);

#ifdef __cplusplus
}
#endif

#endif /* LPSTEINER_H */
