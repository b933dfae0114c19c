#include "qbox/qbox.h"

#include <exception>
#include <new>
#include <string>

#include "qbox/classical.hpp"
#include "qbox/error.hpp"
#include "qbox/propagator.hpp"
#include "qbox/qfunctions.hpp"
#include "qbox/spectrum.hpp"
#include "qbox/verify.hpp"

struct qbox_context {
  qbox::PhysicalConfig cfg;
};

struct qbox_trajectory {
  qbox::Trajectory tr;
};

struct qbox_portrait {
  qbox::EquiEnergyCurve curve;
};

struct qbox_report {
  qbox::VerifyReport report;
  std::string text;
};

namespace {

thread_local std::string g_last_error;

qbox_status to_status(qbox::Errc c) {
  switch (c) {
    case qbox::Errc::invalid_argument: return QBOX_INVALID_ARGUMENT;
    case qbox::Errc::domain: return QBOX_DOMAIN;
    case qbox::Errc::overflow: return QBOX_OVERFLOW;
    case qbox::Errc::no_convergence: return QBOX_NO_CONVERGENCE;
    default: return QBOX_INTERNAL;
  }
}

template <class F>
qbox_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return QBOX_OK;
  } catch (const qbox::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return QBOX_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QBOX_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return QBOX_INTERNAL;
  }
}

qbox_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return QBOX_INVALID_ARGUMENT;
}

}  // namespace

#define QBOX_REQUIRE(p) \
  if (!(p)) return null_arg(#p)

extern "C" {

const char* qbox_version(void) { return "1.0.0"; }

const char* qbox_status_string(qbox_status s) {
  switch (s) {
    case QBOX_OK: return "ok";
    case QBOX_INVALID_ARGUMENT: return "invalid argument";
    case QBOX_DOMAIN: return "domain error";
    case QBOX_OVERFLOW: return "overflow";
    case QBOX_NO_CONVERGENCE: return "no convergence";
    case QBOX_INTERNAL: return "internal error";
    case QBOX_VERIFICATION_FAILED: return "verification failed";
  }
  return "unknown status";
}

const char* qbox_last_error(void) { return g_last_error.c_str(); }

qbox_status qbox_context_create(double q, double hbar, double mass, double length, double tol, qbox_context** out) {
  QBOX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    qbox::PhysicalConfig cfg(qbox::Deformation(q, tol > 0.0 ? tol : 1e-12), hbar, mass, length);
    *out = new qbox_context{cfg};
  });
}

void qbox_context_destroy(qbox_context* ctx) { delete ctx; }

qbox_status qbox_context_q(const qbox_context* ctx, double* q) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(q);
  *q = ctx->cfg.d().q();
  return QBOX_OK;
}

qbox_status qbox_context_mass_q(const qbox_context* ctx, double* m_q) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(m_q);
  *m_q = ctx->cfg.m_q();
  return QBOX_OK;
}

qbox_status qbox_q_number(const qbox_context* ctx, double a, double* out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] { *out = qbox::q_number(a, ctx->cfg.d()); });
}

qbox_status qbox_theta(const qbox_context* ctx, double x, double* out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] { *out = qbox::theta(x, ctx->cfg.d()); });
}

qbox_status qbox_pi_q(const qbox_context* ctx, double nu, double* out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] { *out = qbox::pi_q(nu, ctx->cfg.d()); });
}

qbox_status qbox_pi_q_series(const qbox_context* ctx, double nu, double* out, double* last_term_ratio) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] {
    if (!(nu > 0.0)) qbox::fail(qbox::Errc::invalid_argument, "pi_q_series: nu must be positive");
    const qbox::PiQSeries s = qbox::pi_q_series(nu, qbox::lagrange_table(ctx->cfg.d()));
    *out = s.value;
    if (last_term_ratio) *last_term_ratio = s.last_term_ratio;
  });
}

qbox_status qbox_lagrange_b(const qbox_context* ctx, double b[4]) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(b);
  return guarded([&] {
    const qbox::InversionTable t = qbox::lagrange_table(ctx->cfg.d());
    for (int i = 0; i < 4; ++i) b[i] = t.b[i];
  });
}

qbox_status qbox_gamma1(const qbox_context* ctx, double* out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] { *out = qbox::gamma_q(ctx->cfg.d()).gamma1; });
}

qbox_status qbox_q_trig(const qbox_context* ctx, double x, double out[4]) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] {
    const qbox::QTrigValues v = qbox::q_trig(x, ctx->cfg.d());
    out[0] = v.sin_q.value;
    out[1] = v.cos_q.value;
    out[2] = v.barsin_q.value;
    out[3] = v.barcos_q.value;
  });
}

qbox_status qbox_spectrum(const qbox_context* ctx, int n_max, int normalize, qbox_spectrum_entry* entries) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(entries);
  return guarded([&] {
    const auto s = qbox::box_spectrum(n_max, ctx->cfg, normalize != 0);
    for (std::size_t i = 0; i < s.size(); ++i) entries[i] = {s[i].n, s[i].pi_q, s[i].k_n, s[i].E_n, s[i].N_n};
  });
}

qbox_status qbox_kernel(const qbox_context* ctx, double x, double x_prime, double T, qbox_kernel_value* out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] {
    qbox::KernelRequest r;
    r.x = x;
    r.x_prime = x_prime;
    r.T = T;
    r.cfg = ctx->cfg;
    try {
      const qbox::KernelValue k = qbox::kernel(r);
      *out = {k.value.real(), k.value.imag(), k.terms_used, k.tail_bound};
    } catch (const qbox::KernelTruncationError& e) {
      const qbox::KernelValue& k = e.partial();
      *out = {k.value.real(), k.value.imag(), k.terms_used, k.tail_bound};
      throw;
    }
  });
}

qbox_status qbox_kernel_prefactor(const qbox_context* ctx, double T, double* re, double* im) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(re);
  QBOX_REQUIRE(im);
  return guarded([&] {
    const auto p = qbox::kernel_prefactor(T, ctx->cfg);
    *re = p.real();
    *im = p.imag();
  });
}

qbox_status qbox_hamiltonian(const qbox_context* ctx, double x, double p, double* out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] { *out = qbox::hamiltonian(x, p, ctx->cfg); });
}

qbox_status qbox_eom_rhs(const qbox_context* ctx, double x, double xdot, int sheet, double* out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  return guarded([&] {
    *out = qbox::eom_rhs(x, xdot, ctx->cfg, sheet < 0 ? qbox::Sheet::reflected : qbox::Sheet::principal);
  });
}

qbox_status qbox_trajectory_integrate(const qbox_context* ctx, double t0, double x0, double xdot0, double t_end,
                                      double step, int sheet, qbox_trajectory** out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto tr = qbox::integrate_trajectory({t0, x0, xdot0}, t_end, step, ctx->cfg,
                                         sheet < 0 ? qbox::Sheet::reflected : qbox::Sheet::principal);
    *out = new qbox_trajectory{std::move(tr)};
  });
}

size_t qbox_trajectory_size(const qbox_trajectory* tr) { return tr ? tr->tr.states.size() : 0; }

qbox_status qbox_trajectory_state(const qbox_trajectory* tr, size_t i, double* t, double* x, double* xdot, double* C) {
  QBOX_REQUIRE(tr);
  if (i >= tr->tr.states.size()) {
    g_last_error = "trajectory index out of range";
    return QBOX_INVALID_ARGUMENT;
  }
  const auto& s = tr->tr.states[i];
  if (t) *t = s.t;
  if (x) *x = s.x;
  if (xdot) *xdot = s.xdot;
  if (C) *C = tr->tr.C_values[i];
  return QBOX_OK;
}

double qbox_trajectory_drift(const qbox_trajectory* tr) { return tr ? tr->tr.max_C_drift : 0.0; }
double qbox_trajectory_error_estimate(const qbox_trajectory* tr) { return tr ? tr->tr.error_estimate : 0.0; }

const char* qbox_trajectory_halt_reason(const qbox_trajectory* tr) {
  return tr && tr->tr.halt_reason ? tr->tr.halt_reason->c_str() : nullptr;
}

const char* qbox_trajectory_regime(const qbox_trajectory* tr) { return tr ? tr->tr.regime.c_str() : ""; }

void qbox_trajectory_destroy(qbox_trajectory* tr) { delete tr; }

qbox_status qbox_portrait_compute(const qbox_context* ctx, double E, double p_min, double p_max, int samples,
                                  int max_branch, qbox_portrait** out) {
  QBOX_REQUIRE(ctx);
  QBOX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto c = qbox::equi_energy_trajectory(E, ctx->cfg, p_min, p_max, samples, max_branch);
    *out = new qbox_portrait{std::move(c)};
  });
}

size_t qbox_portrait_size(const qbox_portrait* pp) {
  return pp ? pp->curve.points.size() + pp->curve.stationary.size() : 0;
}

qbox_status qbox_portrait_point(const qbox_portrait* pp, size_t i, qbox_phase_point* out) {
  QBOX_REQUIRE(pp);
  QBOX_REQUIRE(out);
  const auto& c = pp->curve;
  if (i >= c.points.size() + c.stationary.size()) {
    g_last_error = "portrait index out of range";
    return QBOX_INVALID_ARGUMENT;
  }
  const qbox::PhasePoint& p = i < c.points.size() ? c.points[i] : c.stationary[i - c.points.size()];
  *out = {p.x, p.p, p.branch, p.stationary ? 1 : 0};
  return QBOX_OK;
}

size_t qbox_portrait_skipped(const qbox_portrait* pp) { return pp ? pp->curve.skipped_p.size() : 0; }
double qbox_portrait_x_max(const qbox_portrait* pp) { return pp ? pp->curve.x_max : 0.0; }
double qbox_portrait_p0(const qbox_portrait* pp) { return pp ? pp->curve.p0 : 0.0; }
void qbox_portrait_destroy(qbox_portrait* pp) { delete pp; }

qbox_status qbox_verify(double limit_q, qbox_report** out) {
  QBOX_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    qbox::VerifyOptions opt;
    if (limit_q > 0.0) opt.limit_q = limit_q;
    auto r = new qbox_report{qbox::run_verification(opt), {}};
    r->text = qbox::format_report(r->report);
    *out = r;
  });
}

int qbox_report_passed(const qbox_report* r) { return r && r->report.all_passed() ? 1 : 0; }
size_t qbox_report_criteria(const qbox_report* r) { return r ? r->report.criteria.size() : 0; }

qbox_status qbox_report_criterion(const qbox_report* r, size_t i, int* id, int* passed, const char** title) {
  QBOX_REQUIRE(r);
  if (i >= r->report.criteria.size()) {
    g_last_error = "criterion index out of range";
    return QBOX_INVALID_ARGUMENT;
  }
  const auto& c = r->report.criteria[i];
  if (id) *id = c.id;
  if (passed) *passed = c.passed() ? 1 : 0;
  if (title) *title = c.title.c_str();
  return QBOX_OK;
}

const char* qbox_report_text(const qbox_report* r) { return r ? r->text.c_str() : ""; }
void qbox_report_destroy(qbox_report* r) { delete r; }

}  // extern "C"
