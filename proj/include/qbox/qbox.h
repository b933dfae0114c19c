/* qbox: q-deformed one-dimensional quantum mechanics, C interface. */
#ifndef QBOX_H
#define QBOX_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QBOX_BUILDING)
#    define QBOX_API __declspec(dllexport)
#  else
#    define QBOX_API __declspec(dllimport)
#  endif
#else
#  define QBOX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qbox_status {
  QBOX_OK = 0,
  QBOX_INVALID_ARGUMENT = 1,
  QBOX_DOMAIN = 2,
  QBOX_OVERFLOW = 3,
  QBOX_NO_CONVERGENCE = 4,
  QBOX_INTERNAL = 5,
  QBOX_VERIFICATION_FAILED = 6
} qbox_status;

typedef struct qbox_context qbox_context;
typedef struct qbox_trajectory qbox_trajectory;
typedef struct qbox_portrait qbox_portrait;
typedef struct qbox_report qbox_report;

typedef struct qbox_spectrum_entry {
  int n;
  double pi_q;
  double k_n;
  double E_n;
  double N_n;
} qbox_spectrum_entry;

typedef struct qbox_kernel_value {
  double re;
  double im;
  int terms_used;
  double tail_bound;
} qbox_kernel_value;

typedef struct qbox_phase_point {
  double x;
  double p;
  int branch;
  int stationary;
} qbox_phase_point;

QBOX_API const char* qbox_version(void);
QBOX_API const char* qbox_status_string(qbox_status s);
/* Message of the last failure on the calling thread ("" if none). */
QBOX_API const char* qbox_last_error(void);

/* q in (0,1) is mapped to 1/q; q == 1 is rejected. tol <= 0 selects 1e-12. */
QBOX_API qbox_status qbox_context_create(double q, double hbar, double mass, double length, double tol,
                                         qbox_context** out);
QBOX_API void qbox_context_destroy(qbox_context* ctx);
QBOX_API qbox_status qbox_context_q(const qbox_context* ctx, double* q);
QBOX_API qbox_status qbox_context_mass_q(const qbox_context* ctx, double* m_q);

QBOX_API qbox_status qbox_q_number(const qbox_context* ctx, double a, double* out);
QBOX_API qbox_status qbox_theta(const qbox_context* ctx, double x, double* out);
QBOX_API qbox_status qbox_pi_q(const qbox_context* ctx, double nu, double* out);
/* Lagrange-inversion series; last_term_ratio may be NULL. */
QBOX_API qbox_status qbox_pi_q_series(const qbox_context* ctx, double nu, double* out, double* last_term_ratio);
/* b1, b3, b5, b7 */
QBOX_API qbox_status qbox_lagrange_b(const qbox_context* ctx, double b[4]);
QBOX_API qbox_status qbox_gamma1(const qbox_context* ctx, double* out);

/* q-trigonometric values: out = {sin_q, cos_q, sbar_q, cbar_q} */
QBOX_API qbox_status qbox_q_trig(const qbox_context* ctx, double x, double out[4]);

/* entries must hold n_max elements. normalize = 0 skips N_n (left 0). */
QBOX_API qbox_status qbox_spectrum(const qbox_context* ctx, int n_max, int normalize, qbox_spectrum_entry* entries);

QBOX_API qbox_status qbox_kernel(const qbox_context* ctx, double x, double x_prime, double T, qbox_kernel_value* out);
QBOX_API qbox_status qbox_kernel_prefactor(const qbox_context* ctx, double T, double* re, double* im);

QBOX_API qbox_status qbox_hamiltonian(const qbox_context* ctx, double x, double p, double* out);
QBOX_API qbox_status qbox_eom_rhs(const qbox_context* ctx, double x, double xdot, int sheet, double* out);

/* sheet: +1 principal, -1 reflected */
QBOX_API qbox_status qbox_trajectory_integrate(const qbox_context* ctx, double t0, double x0, double xdot0, double t_end,
                                               double step, int sheet, qbox_trajectory** out);
QBOX_API size_t qbox_trajectory_size(const qbox_trajectory* tr);
/* state i: t, x, xdot and the recomputed first integral C */
QBOX_API qbox_status qbox_trajectory_state(const qbox_trajectory* tr, size_t i, double* t, double* x, double* xdot,
                                           double* C);
QBOX_API double qbox_trajectory_drift(const qbox_trajectory* tr);
QBOX_API double qbox_trajectory_error_estimate(const qbox_trajectory* tr);
/* NULL when the run completed */
QBOX_API const char* qbox_trajectory_halt_reason(const qbox_trajectory* tr);
QBOX_API const char* qbox_trajectory_regime(const qbox_trajectory* tr);
QBOX_API void qbox_trajectory_destroy(qbox_trajectory* tr);

QBOX_API qbox_status qbox_portrait_compute(const qbox_context* ctx, double E, double p_min, double p_max, int samples,
                                           int max_branch, qbox_portrait** out);
QBOX_API size_t qbox_portrait_size(const qbox_portrait* pp);
/* regular samples first, then the stationary points */
QBOX_API qbox_status qbox_portrait_point(const qbox_portrait* pp, size_t i, qbox_phase_point* out);
QBOX_API size_t qbox_portrait_skipped(const qbox_portrait* pp);
QBOX_API double qbox_portrait_x_max(const qbox_portrait* pp);
QBOX_API double qbox_portrait_p0(const qbox_portrait* pp);
QBOX_API void qbox_portrait_destroy(qbox_portrait* pp);

/* Full acceptance suite. limit_q <= 0 selects 1 + 1e-4 for the classical-limit criterion. */
QBOX_API qbox_status qbox_verify(double limit_q, qbox_report** out);
QBOX_API int qbox_report_passed(const qbox_report* r);
QBOX_API size_t qbox_report_criteria(const qbox_report* r);
/* id, pass flag and title of criterion i; title valid until the report is destroyed */
QBOX_API qbox_status qbox_report_criterion(const qbox_report* r, size_t i, int* id, int* passed, const char** title);
QBOX_API const char* qbox_report_text(const qbox_report* r);
QBOX_API void qbox_report_destroy(qbox_report* r);

#ifdef __cplusplus
}
#endif

#endif
