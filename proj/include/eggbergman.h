/*
 * eggbergman — weighted Bergman-space verification library for two-block egg
 * domains { (z,w) in C^n x C^m : |z|^2 + |w|^{2/a} < 1 }, 0 < a <= 2.
 *
 * C interface: opaque handles plus status codes. All functions return
 * egg_status; outputs go through pointers. On any failure the thread-local
 * message from egg_last_error() describes the problem.
 *
 * Points are passed as interleaved doubles re0, im0, re1, im1, ... of length
 * 2*(n+m), z coordinates first, then w.
 */
#ifndef EGGBERGMAN_H
#define EGGBERGMAN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define EGG_API __declspec(dllexport)
#else
#define EGG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum egg_status {
    EGG_OK = 0,
    EGG_ERR_BAD_ARGUMENT = 1,  /* invalid parameter, config, or literal */
    EGG_ERR_DOMAIN = 2,        /* mathematical domain violation */
    EGG_ERR_OVERFLOW = 3,      /* exact rational arithmetic overflow */
    EGG_ERR_RUNTIME = 4,       /* convergence, singular system, or I/O */
    EGG_ERR_CHECKS_FAILED = 5, /* a verification run reported failures */
    EGG_ERR_BUFFER_TOO_SMALL = 6
} egg_status;

typedef struct egg_domain egg_domain;
typedef struct egg_poly egg_poly;
typedef struct egg_decomposition egg_decomposition;
typedef struct egg_kernel egg_kernel;
typedef struct egg_config egg_config;

/* Message for the most recent failure on the calling thread ("" if none). */
EGG_API const char* egg_last_error(void);

/* ---- domain geometry and closed-form integrals ---- */

EGG_API egg_status egg_domain_create(int n, int m, double a, egg_domain** out);
EGG_API void egg_domain_free(egg_domain* d);

/* h(z,w) = (1-|z|^2)^a - |w|^2 */
EGG_API egg_status egg_domain_defining_function(const egg_domain* d, const double* xi,
                                                double* out);
/* strict membership |z|^2 + |w|^{2/a} < 1; writes 1 or 0 */
EGG_API egg_status egg_domain_contains(const egg_domain* d, const double* xi, int* out);
/* closed form of  int h^sigma dv  (sigma > -1) */
EGG_API egg_status egg_domain_weighted_volume(const egg_domain* d, double sigma,
                                              double* out);
/* deterministic uniform sample: pure function of (seed, index) */
EGG_API egg_status egg_domain_sample(const egg_domain* d, uint64_t seed, uint64_t index,
                                     double* xi_out);
/* weighted L2 integral of <w,w'>^k / (1-<z,z'>)^r against h^s dv */
EGG_API egg_status egg_psi_norm_integral(const egg_domain* d, double s, int k, double r,
                                         const double* xi, double* out);
/* closed-form moment  int h^sigma |xi^alpha|^2 dv  (alpha: n+m ints) */
EGG_API egg_status egg_monomial_moment(const egg_domain* d, double sigma,
                                       const int* alpha, double* out);

EGG_API egg_status egg_log_gamma(double x, double* out);
/* Gamma(x+t)^2 / (Gamma(t) Gamma(2x+t)) */
EGG_API egg_status egg_gamma_ratio(double x, double t, double* out);

/* ---- polynomials (exact rational coefficients) ----
 * Text literal: one term per row, "alpha_1 ... alpha_{nvars} re im" where the
 * coefficient parts are decimals or fractions p/q. '#' starts a comment. */

EGG_API egg_status egg_poly_parse(int nvars, const char* text, egg_poly** out);
EGG_API void egg_poly_free(egg_poly* f);
/* writes the literal into buffer; *size carries capacity in, length out
 * (excluding the terminator). EGG_ERR_BUFFER_TOO_SMALL sets required size. */
EGG_API egg_status egg_poly_format(const egg_poly* f, char* buffer, size_t* size);
EGG_API egg_status egg_poly_nvars(const egg_poly* f, int* out);
EGG_API egg_status egg_poly_evaluate(const egg_poly* f, const double* xi, double* re,
                                     double* im);
EGG_API egg_status egg_poly_derivative(const egg_poly* f, int k, egg_poly** out);
/* coefficient action c_alpha -> (alpha_k/|alpha|) c_alpha on xi^{alpha-e_k} */
EGG_API egg_status egg_poly_leibenson(const egg_poly* f, int k, egg_poly** out);
/* termwise multiplier c_alpha -> (alpha_k/|alpha|) c_alpha */
EGG_API egg_status egg_poly_multiplier(const egg_poly* f, int k, egg_poly** out);

/* order-m decomposition f = sum_{|alpha|=order} xi^alpha A_alpha f for f
 * vanishing to the given order at 0 */
EGG_API egg_status egg_poly_gleason(const egg_poly* f, int order,
                                    egg_decomposition** out);
EGG_API void egg_decomposition_free(egg_decomposition* dec);
EGG_API egg_status egg_decomposition_size(const egg_decomposition* dec, size_t* out);
/* alpha: nvars ints for entry i */
EGG_API egg_status egg_decomposition_index(const egg_decomposition* dec, size_t i,
                                           int* alpha);
EGG_API egg_status egg_decomposition_component(const egg_decomposition* dec, size_t i,
                                               egg_poly** out);

/* ---- weighted kernel ---- */

/* recovers the n+2 kernel coefficients for weight sigma > -1 */
EGG_API egg_status egg_kernel_solve(const egg_domain* d, double sigma, egg_kernel** out);
EGG_API void egg_kernel_free(egg_kernel* k);
EGG_API egg_status egg_kernel_eval(const egg_kernel* k, const double* xi,
                                   const double* xi_prime, double* re, double* im);
EGG_API egg_status egg_kernel_g(const egg_kernel* k, const double* xi,
                                const double* xi_prime, double* re, double* im);
/* analytic d/dxi_coord of the kernel in its first argument */
EGG_API egg_status egg_kernel_gradient(const egg_kernel* k, int coord, const double* xi,
                                       const double* xi_prime, double* re, double* im);
EGG_API egg_status egg_kernel_coefficient(const egg_kernel* k, int index, double* re,
                                          double* im);
EGG_API egg_status egg_kernel_normalization(const egg_kernel* k, double* out);
EGG_API egg_status egg_kernel_residual(const egg_kernel* k, double* out);
/* text record round-trip (n, m, a, sigma, coefficients, normalization) */
EGG_API egg_status egg_kernel_save(const egg_kernel* k, const char* path);
EGG_API egg_status egg_kernel_load(const char* path, egg_kernel** out);

/* ---- verification runs ---- */

EGG_API egg_status egg_config_create(egg_config** out);
EGG_API void egg_config_free(egg_config* cfg);
/* keys: n m a p lambda sigma d samples seed degree grid h-floor suites out */
EGG_API egg_status egg_config_set(egg_config* cfg, const char* key, const char* value);
/* flat key-value file, same keys; later egg_config_set calls override */
EGG_API egg_status egg_config_load_file(egg_config* cfg, const char* path);

/* Runs the configured suites, writing <out>.jsonl and <out>.csv.
 * *exit_code is 0 when every check passed, 1 otherwise (the call itself
 * returns EGG_OK in both cases; hard errors return a failure status). */
EGG_API egg_status egg_run_suites(const egg_config* cfg, int verbose, int* exit_code);
/* Solves the configured kernel once and stores the record next to `out`. */
EGG_API egg_status egg_solve_and_cache(const egg_config* cfg, int verbose);

#ifdef __cplusplus
}
#endif

#endif /* EGGBERGMAN_H */
