#ifndef WWBNF_WWBNF_H
#define WWBNF_WWBNF_H

/*
 * C interface to the wwbnf core.
 *
 * Every fallible call returns a wwbnf_status; on failure the message is
 * available from wwbnf_last_error() on the calling thread until the next call.
 * Objects behind opaque handles are released with the matching *_free function,
 * which accepts NULL.
 *
 * Physical parameters use depth = INFINITY for deep water.
 * Complex spectral arrays of truncation n hold 2n+1 entries indexed by j + n;
 * the entry for j = 0 is ignored on input and zero on output.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(__GNUC__)
#define WWBNF_API __attribute__((visibility("default")))
#else
#define WWBNF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wwbnf_status {
  WWBNF_OK = 0,
  WWBNF_INVALID_ARGUMENT = 1,
  WWBNF_DOMAIN = 2,
  WWBNF_NO_CONVERGENCE = 3,
  WWBNF_IO = 4,
  WWBNF_NUMERIC = 5,
  WWBNF_INTERNAL = 99
} wwbnf_status;

typedef struct wwbnf_params {
  double g;
  double kappa;
  double depth;
} wwbnf_params;

WWBNF_API const char* wwbnf_version(void);
WWBNF_API const char* wwbnf_last_error(void);
WWBNF_API const char* wwbnf_status_name(wwbnf_status s);
WWBNF_API double wwbnf_default_resonance_tol(void);

/* ---- spectra ---- */

WWBNF_API wwbnf_status wwbnf_omega(const wwbnf_params* p, double xi, double* out);
WWBNF_API wwbnf_status wwbnf_lambda(const wwbnf_params* p, int64_t j, double* out);
WWBNF_API wwbnf_status wwbnf_remainder_constant(const wwbnf_params* p, double* out);
WWBNF_API wwbnf_status wwbnf_resonance_cutoff(const wwbnf_params* p, double* out);
WWBNF_API wwbnf_status wwbnf_wilton_kappa(double g, double depth, int64_t j, double* out);

/* ---- resonances ---- */

typedef struct wwbnf_triple {
  int sigma[3];
  int64_t j[3];
  double phase;
} wwbnf_triple;

typedef struct wwbnf_triple_list wwbnf_triple_list;

WWBNF_API wwbnf_status wwbnf_resonances(const wwbnf_params* p, int64_t max_j, double tol, int threads,
                                        wwbnf_triple_list** out);
WWBNF_API size_t wwbnf_triple_list_size(const wwbnf_triple_list* l);
WWBNF_API wwbnf_status wwbnf_triple_list_get(const wwbnf_triple_list* l, size_t i, wwbnf_triple* out);
WWBNF_API void wwbnf_triple_list_free(wwbnf_triple_list* l);

WWBNF_API wwbnf_status wwbnf_min_gap(const wwbnf_params* p, int64_t max_j, double exclude_tol, int threads,
                                     double* gap, wwbnf_triple* witness);

typedef struct wwbnf_lemma_report {
  int64_t max_j;
  int64_t checked_a;
  int64_t checked_b;
  int64_t violations_a;
  int64_t violations_b;
  double remainder_constant;
  double threshold_n2n3;
  double worst_margin_a;
  double worst_margin_b;
} wwbnf_lemma_report;

WWBNF_API wwbnf_status wwbnf_lemma_bounds(const wwbnf_params* p, int64_t max_j, wwbnf_lemma_report* out);

/* ---- cubic Hamiltonians ---- */

typedef struct wwbnf_cubic_term {
  int sigma[3];
  int64_t j[3];
  double re;
  double im;
  int multiplicity;
  double phase;
} wwbnf_cubic_term;

typedef struct wwbnf_cubic wwbnf_cubic;

/* all momentum triples with max |j| <= max_j, closed-form coefficients */
WWBNF_API wwbnf_status wwbnf_cubic_full(const wwbnf_params* p, int64_t max_j, wwbnf_cubic** out);
/* resonant part only */
WWBNF_API wwbnf_status wwbnf_cubic_resonant(const wwbnf_params* p, int64_t max_j, double tol, int threads,
                                            wwbnf_cubic** out);
/* independent expansion from the real-variable cubic energy */
WWBNF_API wwbnf_status wwbnf_cubic_from_real(const wwbnf_params* p, int64_t max_j, wwbnf_cubic** out);
WWBNF_API wwbnf_status wwbnf_cubic_read(const char* path, wwbnf_cubic** out);
WWBNF_API wwbnf_status wwbnf_cubic_write(const wwbnf_cubic* h, const char* path);
WWBNF_API size_t wwbnf_cubic_size(const wwbnf_cubic* h);
WWBNF_API wwbnf_status wwbnf_cubic_get(const wwbnf_cubic* h, size_t i, wwbnf_cubic_term* out);
WWBNF_API wwbnf_status wwbnf_cubic_compare(const wwbnf_cubic* a, const wwbnf_cubic* b, double* max_abs_diff,
                                           size_t* missing);
WWBNF_API void wwbnf_cubic_free(wwbnf_cubic* h);

/* ---- property suites ---- */

typedef struct wwbnf_verify_config {
  int64_t lemma_max_j;
  int64_t oracle_max_j;
  double oracle_tol;
  double resonance_tol;
  int64_t bnf_max_j;
  int homological_instances;
  int homological_keys;
  int64_t homological_max_index;
  double homological_tol;
  double bracket_tol;
  uint64_t seed;
  int threads;
  const char* table_path; /* NULL: check the closed form */
} wwbnf_verify_config;

typedef struct wwbnf_verify wwbnf_verify;

typedef struct wwbnf_check {
  const char* name;
  int passed;
  double value;
  double tolerance;
  const char* detail;
} wwbnf_check;

WWBNF_API void wwbnf_verify_config_default(wwbnf_verify_config* cfg);
WWBNF_API wwbnf_status wwbnf_verify_run(const wwbnf_params* p, const wwbnf_verify_config* cfg, wwbnf_verify** out);
WWBNF_API size_t wwbnf_verify_count(const wwbnf_verify* v);
/* strings stay valid until the handle is freed */
WWBNF_API wwbnf_status wwbnf_verify_get(const wwbnf_verify* v, size_t i, wwbnf_check* out);
WWBNF_API int wwbnf_verify_passed(const wwbnf_verify* v);
WWBNF_API void wwbnf_verify_free(wwbnf_verify* v);

/* ---- resonant normal-form flow ---- */

typedef enum wwbnf_scheme { WWBNF_IMPLICIT_MIDPOINT = 0, WWBNF_RK4_ROTATING_FRAME = 1 } wwbnf_scheme;

typedef struct wwbnf_flow_config {
  double dt;
  double t_final;
  wwbnf_scheme scheme;
  int record_every;
  double sobolev_s;
  double low_cutoff; /* <= 0: use the resonance cutoff */
  int backward;
  double t_start;
  double fixed_point_tol;
  int max_iterations;
  int64_t bnf_max_j; /* enumeration box for the resonant Hamiltonian */
  double resonance_tol;
  int threads;
} wwbnf_flow_config;

typedef struct wwbnf_flow_record {
  double t;
  double h2;
  double h3;
  double momentum;
  double sobolev_norm;
  double equiv_norm;
} wwbnf_flow_record;

typedef struct wwbnf_flow wwbnf_flow;

WWBNF_API void wwbnf_flow_config_default(wwbnf_flow_config* cfg);
WWBNF_API wwbnf_status wwbnf_flow_run(const wwbnf_params* p, const wwbnf_flow_config* cfg, int64_t n,
                                      const double* z_re, const double* z_im, wwbnf_flow** out);
WWBNF_API size_t wwbnf_flow_size(const wwbnf_flow* f);
WWBNF_API int64_t wwbnf_flow_modes(const wwbnf_flow* f);
WWBNF_API int wwbnf_flow_iterations_used(const wwbnf_flow* f);
WWBNF_API double wwbnf_flow_cutoff(const wwbnf_flow* f);
WWBNF_API size_t wwbnf_flow_terms(const wwbnf_flow* f);
WWBNF_API wwbnf_status wwbnf_flow_record_get(const wwbnf_flow* f, size_t i, wwbnf_flow_record* out);
/* z at record i into arrays of length 2n+1 */
WWBNF_API wwbnf_status wwbnf_flow_state(const wwbnf_flow* f, size_t i, double* z_re, double* z_im);
WWBNF_API wwbnf_status wwbnf_flow_write_csv(const wwbnf_flow* f, const char* path, int dump_modes);
WWBNF_API void wwbnf_flow_free(wwbnf_flow* f);

/* ---- full water-wave solver ---- */

typedef struct wwbnf_ww_config {
  int m;
  int dno_order;
  double dt;
  double t_final;
  double dealias;
  double filter_strength;
  int record_every;
  double sobolev_s;
  double norm_ceiling;
  double stop_norm; /* INFINITY disables */
  int mode_count;
} wwbnf_ww_config;

typedef enum wwbnf_ww_status {
  WWBNF_WW_COMPLETED = 0,
  WWBNF_WW_STOPPED = 1,
  WWBNF_WW_BLOW_UP = 2,
  WWBNF_WW_NOT_FINITE = 3
} wwbnf_ww_status;

typedef struct wwbnf_ww_record {
  double t;
  double h;
  double mass;
  double momentum;
  double mixed_norm;
} wwbnf_ww_record;

typedef struct wwbnf_ww_run wwbnf_ww_run;

WWBNF_API void wwbnf_ww_config_default(wwbnf_ww_config* cfg);
/* traveling seed eta ~ cos x + cos(2x)/2 with mixed norm eps; eta, psi hold m samples */
WWBNF_API wwbnf_status wwbnf_ww_seed(const wwbnf_params* p, int m, double eps, double s, double* eta, double* psi);
/* seed with u_1 = i, u_2 = i ratio e^{i phase}, mixed norm eps */
WWBNF_API wwbnf_status wwbnf_ww_seed_two_mode(const wwbnf_params* p, int m, double eps, double s, double ratio,
                                              double phase, double* eta, double* psi);
WWBNF_API wwbnf_status wwbnf_ww_integrate(const wwbnf_params* p, const wwbnf_ww_config* cfg, const double* eta,
                                          const double* psi, wwbnf_ww_run** out);
WWBNF_API size_t wwbnf_ww_size(const wwbnf_ww_run* r);
WWBNF_API wwbnf_status wwbnf_ww_record_get(const wwbnf_ww_run* r, size_t i, wwbnf_ww_record* out);
/* |u_k| for k = 1..mode_count at record i */
WWBNF_API wwbnf_status wwbnf_ww_mode_amplitudes(const wwbnf_ww_run* r, size_t i, double* out, size_t n);
WWBNF_API wwbnf_ww_status wwbnf_ww_status_of(const wwbnf_ww_run* r);
WWBNF_API const char* wwbnf_ww_status_name(wwbnf_ww_status s);
WWBNF_API double wwbnf_ww_t_end(const wwbnf_ww_run* r);
WWBNF_API int64_t wwbnf_ww_steps(const wwbnf_ww_run* r);
WWBNF_API const char* wwbnf_ww_message(const wwbnf_ww_run* r);
WWBNF_API wwbnf_status wwbnf_ww_write_csv(const wwbnf_ww_run* r, const char* path);
WWBNF_API void wwbnf_ww_free(wwbnf_ww_run* r);

/* ---- lifespan experiment ---- */

typedef struct wwbnf_lifespan_config {
  const double* epsilons;
  size_t n_epsilons;
  double sobolev_s;
  double threshold_factor;
  double t_max_scale;
  wwbnf_ww_config solver;
  int threads;
} wwbnf_lifespan_config;

typedef struct wwbnf_lifespan_row {
  double eps;
  double t_eps;
  double t_max;
  int censored;
  double final_norm;
  int64_t steps;
  wwbnf_ww_status status;
} wwbnf_lifespan_row;

typedef struct wwbnf_lifespan_fit {
  double exponent;
  double intercept;
  double std_error;
  double ci_low;
  double ci_high;
  int all_censored;
} wwbnf_lifespan_fit;

typedef struct wwbnf_lifespan wwbnf_lifespan;

/* fills defaults; epsilons point at static storage {0.08, 0.04, 0.02} */
WWBNF_API void wwbnf_lifespan_config_default(wwbnf_lifespan_config* cfg);
WWBNF_API wwbnf_status wwbnf_lifespan_run(const wwbnf_params* p, const wwbnf_lifespan_config* cfg,
                                          wwbnf_lifespan** out);
WWBNF_API size_t wwbnf_lifespan_size(const wwbnf_lifespan* l);
WWBNF_API wwbnf_status wwbnf_lifespan_row_get(const wwbnf_lifespan* l, size_t i, wwbnf_lifespan_row* out);
WWBNF_API wwbnf_status wwbnf_lifespan_fit_get(const wwbnf_lifespan* l, wwbnf_lifespan_fit* out);
WWBNF_API wwbnf_status wwbnf_lifespan_write_csv(const wwbnf_lifespan* l, const char* path);
WWBNF_API void wwbnf_lifespan_free(wwbnf_lifespan* l);

/* ---- full solver against the resonant flow ---- */

typedef struct wwbnf_correspondence_config {
  double eps;
  double sobolev_s;
  int m;
  double dt;
  double t_final; /* <= 0: 1/eps */
  int record_every;
  int dno_order;
  double ratio;
  double phase;
} wwbnf_correspondence_config;

typedef struct wwbnf_correspondence_result {
  double max_rel_error;
  double max_exchange;
  double frozen_rel_error;
  size_t records;
  wwbnf_ww_status status;
} wwbnf_correspondence_result;

WWBNF_API void wwbnf_correspondence_config_default(wwbnf_correspondence_config* cfg);
WWBNF_API wwbnf_status wwbnf_correspondence_run(const wwbnf_params* p, const wwbnf_correspondence_config* cfg,
                                                wwbnf_correspondence_result* out);

#ifdef __cplusplus
}
#endif

#endif
