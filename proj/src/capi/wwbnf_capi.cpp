#include "wwbnf/wwbnf.h"

#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "birkhoff.hpp"
#include "correspondence.hpp"
#include "error.hpp"
#include "resonance.hpp"
#include "resonant_flow.hpp"
#include "spectra.hpp"
#include "verify.hpp"
#include "waterwaves.hpp"

struct wwbnf_triple_list {
  std::vector<wwbnf::Triple> triples;
};

struct wwbnf_cubic {
  wwbnf::CubicHamiltonian h;
  std::vector<wwbnf::CubicTerm> terms;
};

struct wwbnf_verify {
  wwbnf::VerifyReport report;
};

struct wwbnf_flow {
  wwbnf::CubicHamiltonian h;
  wwbnf::Trajectory traj;
  std::vector<wwbnf::FlowDiagnostics> diag;
  std::int64_t n = 0;
};

struct wwbnf_ww_run {
  wwbnf::WwResult result;
  int mode_count = 0;
};

struct wwbnf_lifespan {
  wwbnf::LifespanResult result;
};

namespace {

thread_local std::string g_last_error;

using namespace wwbnf;

wwbnf_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return WWBNF_INVALID_ARGUMENT;
    case ErrorCode::Domain: return WWBNF_DOMAIN;
    case ErrorCode::NoConvergence: return WWBNF_NO_CONVERGENCE;
    case ErrorCode::Io: return WWBNF_IO;
    case ErrorCode::Numeric: return WWBNF_NUMERIC;
    case ErrorCode::Internal: return WWBNF_INTERNAL;
  }
  return WWBNF_INTERNAL;
}

template <class F>
wwbnf_status guard(F&& f) {
  g_last_error.clear();
  try {
    f();
    return WWBNF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return WWBNF_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return WWBNF_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return WWBNF_INTERNAL;
  }
}

void need(const void* ptr, const char* what) {
  if (!ptr) fail(ErrorCode::InvalidArgument, std::string("null pointer: ") + what);
}

PhysicalParams params_of(const wwbnf_params* p) {
  need(p, "params");
  const Depth d = std::isinf(p->depth) && p->depth > 0 ? Depth::infinite() : Depth::finite(p->depth);
  return PhysicalParams(p->g, p->kappa, d);
}

void fill_modes(const ModeTriple& m, int* sigma, int64_t* j) {
  for (int i = 0; i < 3; ++i) {
    sigma[i] = m[i].sigma;
    j[i] = m[i].j;
  }
}

wwbnf_triple triple_of(const Triple& t) {
  wwbnf_triple out{};
  fill_modes(t.modes, out.sigma, out.j);
  out.phase = t.phase;
  return out;
}

void check_index(size_t i, size_t n) {
  if (i >= n) fail(ErrorCode::InvalidArgument, "index " + std::to_string(i) + " out of range (size " + std::to_string(n) + ")");
}

SolverConfig solver_of(const wwbnf_ww_config* c) {
  need(c, "ww config");
  SolverConfig s;
  s.m = c->m;
  s.dno_order = c->dno_order;
  s.dt = c->dt;
  s.t_final = c->t_final;
  s.dealias = c->dealias;
  s.filter_strength = c->filter_strength;
  s.record_every = c->record_every;
  s.sobolev_s = c->sobolev_s;
  s.norm_ceiling = c->norm_ceiling;
  s.stop_norm = c->stop_norm;
  s.mode_count = c->mode_count;
  s.validate();
  return s;
}

wwbnf_ww_config ww_config_of(const SolverConfig& s) {
  wwbnf_ww_config c{};
  c.m = s.m;
  c.dno_order = s.dno_order;
  c.dt = s.dt;
  c.t_final = s.t_final;
  c.dealias = s.dealias;
  c.filter_strength = s.filter_strength;
  c.record_every = s.record_every;
  c.sobolev_s = s.sobolev_s;
  c.norm_ceiling = s.norm_ceiling;
  c.stop_norm = s.stop_norm;
  c.mode_count = s.mode_count;
  return c;
}

wwbnf_ww_status ww_status_of(WwStatus s) {
  switch (s) {
    case WwStatus::Completed: return WWBNF_WW_COMPLETED;
    case WwStatus::Stopped: return WWBNF_WW_STOPPED;
    case WwStatus::BlowUp: return WWBNF_WW_BLOW_UP;
    case WwStatus::NotFinite: return WWBNF_WW_NOT_FINITE;
  }
  return WWBNF_WW_NOT_FINITE;
}

void copy_state(const WaveState& s, double* eta, double* psi) {
  need(eta, "eta");
  need(psi, "psi");
  std::copy(s.eta.begin(), s.eta.end(), eta);
  std::copy(s.psi.begin(), s.psi.end(), psi);
}

const double kDefaultEpsilons[3] = {0.08, 0.04, 0.02};

}  // namespace

extern "C" {

const char* wwbnf_version(void) { return "0.1.0"; }

const char* wwbnf_last_error(void) { return g_last_error.c_str(); }

const char* wwbnf_status_name(wwbnf_status s) {
  switch (s) {
    case WWBNF_OK: return "ok";
    case WWBNF_INVALID_ARGUMENT: return "invalid argument";
    case WWBNF_DOMAIN: return "domain error";
    case WWBNF_NO_CONVERGENCE: return "no convergence";
    case WWBNF_IO: return "i/o error";
    case WWBNF_NUMERIC: return "numeric error";
    case WWBNF_INTERNAL: return "internal error";
  }
  return "unknown status";
}

double wwbnf_default_resonance_tol(void) { return kDefaultResonanceTol; }

wwbnf_status wwbnf_omega(const wwbnf_params* p, double xi, double* out) {
  return guard([&] {
    need(out, "out");
    *out = omega(params_of(p), xi);
  });
}

wwbnf_status wwbnf_lambda(const wwbnf_params* p, int64_t j, double* out) {
  return guard([&] {
    need(out, "out");
    *out = lambda_mult(params_of(p), j);
  });
}

wwbnf_status wwbnf_remainder_constant(const wwbnf_params* p, double* out) {
  return guard([&] {
    need(out, "out");
    *out = certified_remainder_constant(params_of(p));
  });
}

wwbnf_status wwbnf_resonance_cutoff(const wwbnf_params* p, double* out) {
  return guard([&] {
    need(out, "out");
    *out = resonance_cutoff(params_of(p));
  });
}

wwbnf_status wwbnf_wilton_kappa(double g, double depth, int64_t j, double* out) {
  return guard([&] {
    need(out, "out");
    const Depth d = std::isinf(depth) && depth > 0 ? Depth::infinite() : Depth::finite(depth);
    *out = wilton_kappa(g, d, j);
  });
}

wwbnf_status wwbnf_resonances(const wwbnf_params* p, int64_t max_j, double tol, int threads,
                              wwbnf_triple_list** out) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    auto l = std::make_unique<wwbnf_triple_list>();
    l->triples = enumerate_resonances(params_of(p), max_j, tol, threads);
    *out = l.release();
  });
}

size_t wwbnf_triple_list_size(const wwbnf_triple_list* l) { return l ? l->triples.size() : 0; }

wwbnf_status wwbnf_triple_list_get(const wwbnf_triple_list* l, size_t i, wwbnf_triple* out) {
  return guard([&] {
    need(l, "list");
    need(out, "out");
    check_index(i, l->triples.size());
    *out = triple_of(l->triples[i]);
  });
}

void wwbnf_triple_list_free(wwbnf_triple_list* l) { delete l; }

wwbnf_status wwbnf_min_gap(const wwbnf_params* p, int64_t max_j, double exclude_tol, int threads, double* gap,
                           wwbnf_triple* witness) {
  return guard([&] {
    need(gap, "gap");
    const auto r = min_gap(params_of(p), max_j, exclude_tol, threads);
    *gap = r.gap;
    if (witness) *witness = triple_of(r.witness);
  });
}

wwbnf_status wwbnf_lemma_bounds(const wwbnf_params* p, int64_t max_j, wwbnf_lemma_report* out) {
  return guard([&] {
    need(out, "out");
    const auto r = verify_lemma_bounds(params_of(p), max_j);
    *out = wwbnf_lemma_report{r.max_j,          r.checked_a,      r.checked_b,      r.violations_a, r.violations_b,
                              r.remainder_constant, r.threshold_n2n3, r.worst_margin_a, r.worst_margin_b};
  });
}

static wwbnf_status make_cubic(wwbnf_cubic** out, const std::function<CubicHamiltonian()>& build) {
  return guard([&] {
    need(out, "out");
    *out = nullptr;
    auto c = std::make_unique<wwbnf_cubic>();
    c->h = build();
    c->terms = c->h.terms();
    *out = c.release();
  });
}

wwbnf_status wwbnf_cubic_full(const wwbnf_params* p, int64_t max_j, wwbnf_cubic** out) {
  return make_cubic(out, [&] { return full_cubic_hamiltonian(params_of(p), max_j); });
}

wwbnf_status wwbnf_cubic_resonant(const wwbnf_params* p, int64_t max_j, double tol, int threads, wwbnf_cubic** out) {
  return make_cubic(out, [&] { return assemble_resonant_hamiltonian(params_of(p), max_j, tol, threads); });
}

wwbnf_status wwbnf_cubic_from_real(const wwbnf_params* p, int64_t max_j, wwbnf_cubic** out) {
  return make_cubic(out, [&] { return expand_h3_from_real(params_of(p), max_j); });
}

wwbnf_status wwbnf_cubic_read(const char* path, wwbnf_cubic** out) {
  return make_cubic(out, [&] {
    need(path, "path");
    return read_table(std::string(path));
  });
}

wwbnf_status wwbnf_cubic_write(const wwbnf_cubic* h, const char* path) {
  return guard([&] {
    need(h, "table");
    need(path, "path");
    write_table(std::string(path), h->h);
  });
}

size_t wwbnf_cubic_size(const wwbnf_cubic* h) { return h ? h->terms.size() : 0; }

wwbnf_status wwbnf_cubic_get(const wwbnf_cubic* h, size_t i, wwbnf_cubic_term* out) {
  return guard([&] {
    need(h, "table");
    need(out, "out");
    check_index(i, h->terms.size());
    const auto& t = h->terms[i];
    fill_modes(t.key, out->sigma, out->j);
    out->re = t.coeff.real();
    out->im = t.coeff.imag();
    out->multiplicity = t.mult;
    out->phase = phase_of(h->h.params(), t.key);
  });
}

wwbnf_status wwbnf_cubic_compare(const wwbnf_cubic* a, const wwbnf_cubic* b, double* max_abs_diff, size_t* missing) {
  return guard([&] {
    need(a, "a");
    need(b, "b");
    const auto c = compare_tables(a->h, b->h);
    if (max_abs_diff) *max_abs_diff = c.max_abs_diff;
    if (missing) *missing = c.missing;
  });
}

void wwbnf_cubic_free(wwbnf_cubic* h) { delete h; }

void wwbnf_verify_config_default(wwbnf_verify_config* cfg) {
  if (!cfg) return;
  const VerifyConfig d;
  *cfg = wwbnf_verify_config{d.lemma_max_j,     d.oracle_max_j,         d.oracle_tol,   d.resonance_tol,
                             d.bnf_max_j,       d.homological_instances, d.homological_keys,
                             d.homological_max_index, d.homological_tol, d.bracket_tol, d.seed,
                             d.threads,         nullptr};
}

wwbnf_status wwbnf_verify_run(const wwbnf_params* p, const wwbnf_verify_config* cfg, wwbnf_verify** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = nullptr;
    VerifyConfig c;
    c.lemma_max_j = cfg->lemma_max_j;
    c.oracle_max_j = cfg->oracle_max_j;
    c.oracle_tol = cfg->oracle_tol;
    c.resonance_tol = cfg->resonance_tol;
    c.bnf_max_j = cfg->bnf_max_j;
    c.homological_instances = cfg->homological_instances;
    c.homological_keys = cfg->homological_keys;
    c.homological_max_index = cfg->homological_max_index;
    c.homological_tol = cfg->homological_tol;
    c.bracket_tol = cfg->bracket_tol;
    c.seed = cfg->seed;
    c.threads = cfg->threads;
    if (cfg->table_path) c.table_path = std::string(cfg->table_path);
    auto v = std::make_unique<wwbnf_verify>();
    v->report = run_verify(params_of(p), c);
    *out = v.release();
  });
}

size_t wwbnf_verify_count(const wwbnf_verify* v) { return v ? v->report.checks.size() : 0; }

wwbnf_status wwbnf_verify_get(const wwbnf_verify* v, size_t i, wwbnf_check* out) {
  return guard([&] {
    need(v, "report");
    need(out, "out");
    check_index(i, v->report.checks.size());
    const auto& c = v->report.checks[i];
    *out = wwbnf_check{c.name.c_str(), c.passed ? 1 : 0, c.value, c.tolerance, c.detail.c_str()};
  });
}

int wwbnf_verify_passed(const wwbnf_verify* v) { return v && v->report.passed() ? 1 : 0; }

void wwbnf_verify_free(wwbnf_verify* v) { delete v; }

void wwbnf_flow_config_default(wwbnf_flow_config* cfg) {
  if (!cfg) return;
  const FlowConfig d;
  *cfg = wwbnf_flow_config{d.dt,          d.t_final,         WWBNF_IMPLICIT_MIDPOINT, d.record_every, d.sobolev_s,
                           d.low_cutoff,  d.backward ? 1 : 0, d.t_start,              d.fixed_point_tol,
                           d.max_iterations, 64,             kDefaultResonanceTol,    1};
}

wwbnf_status wwbnf_flow_run(const wwbnf_params* p, const wwbnf_flow_config* cfg, int64_t n, const double* z_re,
                            const double* z_im, wwbnf_flow** out) {
  return guard([&] {
    need(cfg, "config");
    need(z_re, "z_re");
    need(z_im, "z_im");
    need(out, "out");
    *out = nullptr;
    require(n >= 1 && n <= (1 << 20), "mode truncation must be in [1, 2^20]");
    const PhysicalParams pp = params_of(p);
    FlowConfig c;
    c.dt = cfg->dt;
    c.t_final = cfg->t_final;
    require(cfg->scheme == WWBNF_IMPLICIT_MIDPOINT || cfg->scheme == WWBNF_RK4_ROTATING_FRAME, "unknown scheme");
    c.scheme = cfg->scheme == WWBNF_IMPLICIT_MIDPOINT ? FlowScheme::ImplicitMidpoint : FlowScheme::Rk4RotatingFrame;
    c.record_every = cfg->record_every;
    c.sobolev_s = cfg->sobolev_s;
    c.low_cutoff = cfg->low_cutoff;
    c.backward = cfg->backward != 0;
    c.t_start = cfg->t_start;
    c.fixed_point_tol = cfg->fixed_point_tol;
    c.max_iterations = cfg->max_iterations;
    SpectralState z0(static_cast<int>(n));
    for (int64_t j = -n; j <= n; ++j) {
      if (j == 0) continue;
      z0[static_cast<int>(j)] = cplx(z_re[j + n], z_im[j + n]);
      if (!std::isfinite(z_re[j + n]) || !std::isfinite(z_im[j + n])) fail(ErrorCode::InvalidArgument, "non-finite initial data");
    }
    auto f = std::make_unique<wwbnf_flow>();
    f->n = n;
    f->h = assemble_resonant_hamiltonian(pp, cfg->bnf_max_j, cfg->resonance_tol, cfg->threads);
    f->traj = integrate_resonant(pp, f->h, z0, c);
    f->diag = flow_diagnostics(f->traj, f->h, c.sobolev_s);
    *out = f.release();
  });
}

size_t wwbnf_flow_size(const wwbnf_flow* f) { return f ? f->diag.size() : 0; }
int64_t wwbnf_flow_modes(const wwbnf_flow* f) { return f ? f->n : 0; }
int wwbnf_flow_iterations_used(const wwbnf_flow* f) { return f ? f->traj.max_iterations_used : 0; }
double wwbnf_flow_cutoff(const wwbnf_flow* f) { return f ? f->traj.cutoff : 0.0; }
size_t wwbnf_flow_terms(const wwbnf_flow* f) { return f ? f->h.size() : 0; }

wwbnf_status wwbnf_flow_record_get(const wwbnf_flow* f, size_t i, wwbnf_flow_record* out) {
  return guard([&] {
    need(f, "flow");
    need(out, "out");
    check_index(i, f->diag.size());
    const auto& d = f->diag[i];
    *out = wwbnf_flow_record{d.t, d.h2, d.h3, d.momentum, d.sobolev_norm, d.equiv_norm};
  });
}

wwbnf_status wwbnf_flow_state(const wwbnf_flow* f, size_t i, double* z_re, double* z_im) {
  return guard([&] {
    need(f, "flow");
    need(z_re, "z_re");
    need(z_im, "z_im");
    check_index(i, f->traj.size());
    const auto z = f->traj.state(i);
    for (int64_t j = -f->n; j <= f->n; ++j) {
      const cplx v = j == 0 ? cplx{} : z.at(static_cast<int>(j));
      z_re[j + f->n] = v.real();
      z_im[j + f->n] = v.imag();
    }
  });
}

wwbnf_status wwbnf_flow_write_csv(const wwbnf_flow* f, const char* path, int dump_modes) {
  return guard([&] {
    need(f, "flow");
    need(path, "path");
    require(dump_modes >= 0, "dump_modes must be >= 0");
    write_flow_csv(path, f->traj, f->diag, dump_modes);
  });
}

void wwbnf_flow_free(wwbnf_flow* f) { delete f; }

void wwbnf_ww_config_default(wwbnf_ww_config* cfg) {
  if (cfg) *cfg = ww_config_of(SolverConfig{});
}

wwbnf_status wwbnf_ww_seed(const wwbnf_params* p, int m, double eps, double s, double* eta, double* psi) {
  return guard([&] { copy_state(seed_state(params_of(p), m, eps, s), eta, psi); });
}

wwbnf_status wwbnf_ww_seed_two_mode(const wwbnf_params* p, int m, double eps, double s, double ratio, double phase,
                                    double* eta, double* psi) {
  return guard([&] {
    FourierField u(2);
    u[1] = cplx(0.0, 1.0);
    u[2] = ratio * std::polar(1.0, phase) * cplx(0.0, 1.0);
    copy_state(seed_from_complex(params_of(p), m, u, eps, s), eta, psi);
  });
}

wwbnf_status wwbnf_ww_integrate(const wwbnf_params* p, const wwbnf_ww_config* cfg, const double* eta,
                                const double* psi, wwbnf_ww_run** out) {
  return guard([&] {
    need(eta, "eta");
    need(psi, "psi");
    need(out, "out");
    *out = nullptr;
    const SolverConfig sc = solver_of(cfg);
    WaveState s0{std::vector<double>(eta, eta + sc.m), std::vector<double>(psi, psi + sc.m)};
    auto r = std::make_unique<wwbnf_ww_run>();
    r->result = integrate_ww(params_of(p), s0, sc);
    r->mode_count = sc.mode_count;
    *out = r.release();
  });
}

size_t wwbnf_ww_size(const wwbnf_ww_run* r) { return r ? r->result.records.size() : 0; }

wwbnf_status wwbnf_ww_record_get(const wwbnf_ww_run* r, size_t i, wwbnf_ww_record* out) {
  return guard([&] {
    need(r, "run");
    need(out, "out");
    check_index(i, r->result.records.size());
    const auto& x = r->result.records[i];
    *out = wwbnf_ww_record{x.t, x.h, x.mass, x.momentum, x.mixed_norm};
  });
}

wwbnf_status wwbnf_ww_mode_amplitudes(const wwbnf_ww_run* r, size_t i, double* out, size_t n) {
  return guard([&] {
    need(r, "run");
    need(out, "out");
    check_index(i, r->result.records.size());
    const auto& a = r->result.records[i].mode_amp;
    for (size_t k = 0; k < n; ++k) out[k] = k < a.size() ? a[k] : std::numeric_limits<double>::quiet_NaN();
  });
}

wwbnf_ww_status wwbnf_ww_status_of(const wwbnf_ww_run* r) {
  return r ? ww_status_of(r->result.status) : WWBNF_WW_NOT_FINITE;
}

const char* wwbnf_ww_status_name(wwbnf_ww_status s) {
  switch (s) {
    case WWBNF_WW_COMPLETED: return "completed";
    case WWBNF_WW_STOPPED: return "stopped";
    case WWBNF_WW_BLOW_UP: return "blow-up";
    case WWBNF_WW_NOT_FINITE: return "not-finite";
  }
  return "unknown";
}

double wwbnf_ww_t_end(const wwbnf_ww_run* r) { return r ? r->result.t_end : 0.0; }
int64_t wwbnf_ww_steps(const wwbnf_ww_run* r) { return r ? r->result.steps : 0; }
const char* wwbnf_ww_message(const wwbnf_ww_run* r) { return r ? r->result.message.c_str() : ""; }

wwbnf_status wwbnf_ww_write_csv(const wwbnf_ww_run* r, const char* path) {
  return guard([&] {
    need(r, "run");
    need(path, "path");
    write_ww_csv(path, r->result, r->mode_count);
  });
}

void wwbnf_ww_free(wwbnf_ww_run* r) { delete r; }

void wwbnf_lifespan_config_default(wwbnf_lifespan_config* cfg) {
  if (!cfg) return;
  const LifespanConfig d;
  cfg->epsilons = kDefaultEpsilons;
  cfg->n_epsilons = 3;
  cfg->sobolev_s = d.sobolev_s;
  cfg->threshold_factor = d.threshold_factor;
  cfg->t_max_scale = d.t_max_scale;
  cfg->solver = ww_config_of(d.solver);
  cfg->threads = d.threads;
}

wwbnf_status wwbnf_lifespan_run(const wwbnf_params* p, const wwbnf_lifespan_config* cfg, wwbnf_lifespan** out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    *out = nullptr;
    if (cfg->n_epsilons > 0) need(cfg->epsilons, "epsilons");
    LifespanConfig c;
    c.epsilons.assign(cfg->epsilons, cfg->epsilons + cfg->n_epsilons);
    c.sobolev_s = cfg->sobolev_s;
    c.threshold_factor = cfg->threshold_factor;
    c.t_max_scale = cfg->t_max_scale;
    c.solver = solver_of(&cfg->solver);
    c.threads = cfg->threads;
    auto l = std::make_unique<wwbnf_lifespan>();
    l->result = lifespan_experiment(params_of(p), c);
    *out = l.release();
  });
}

size_t wwbnf_lifespan_size(const wwbnf_lifespan* l) { return l ? l->result.rows.size() : 0; }

wwbnf_status wwbnf_lifespan_row_get(const wwbnf_lifespan* l, size_t i, wwbnf_lifespan_row* out) {
  return guard([&] {
    need(l, "lifespan");
    need(out, "out");
    check_index(i, l->result.rows.size());
    const auto& r = l->result.rows[i];
    *out = wwbnf_lifespan_row{r.eps, r.t_eps, r.t_max, r.censored ? 1 : 0, r.final_norm, r.steps, ww_status_of(r.status)};
  });
}

wwbnf_status wwbnf_lifespan_fit_get(const wwbnf_lifespan* l, wwbnf_lifespan_fit* out) {
  return guard([&] {
    need(l, "lifespan");
    need(out, "out");
    const auto& f = l->result.fit;
    *out = wwbnf_lifespan_fit{f.exponent, f.intercept, f.std_error, f.ci_low, f.ci_high, l->result.all_censored ? 1 : 0};
  });
}

wwbnf_status wwbnf_lifespan_write_csv(const wwbnf_lifespan* l, const char* path) {
  return guard([&] {
    need(l, "lifespan");
    need(path, "path");
    write_lifespan_csv(path, l->result);
  });
}

void wwbnf_lifespan_free(wwbnf_lifespan* l) { delete l; }

void wwbnf_correspondence_config_default(wwbnf_correspondence_config* cfg) {
  if (!cfg) return;
  const CorrespondenceConfig d;
  *cfg = wwbnf_correspondence_config{d.eps, d.sobolev_s, d.m, d.dt, d.t_final, d.record_every, d.dno_order, d.ratio, d.phase};
}

wwbnf_status wwbnf_correspondence_run(const wwbnf_params* p, const wwbnf_correspondence_config* cfg,
                                      wwbnf_correspondence_result* out) {
  return guard([&] {
    need(cfg, "config");
    need(out, "out");
    CorrespondenceConfig c;
    c.eps = cfg->eps;
    c.sobolev_s = cfg->sobolev_s;
    c.m = cfg->m;
    c.dt = cfg->dt;
    c.t_final = cfg->t_final;
    c.record_every = cfg->record_every;
    c.dno_order = cfg->dno_order;
    c.ratio = cfg->ratio;
    c.phase = cfg->phase;
    const auto r = run_correspondence(params_of(p), c);
    *out = wwbnf_correspondence_result{r.max_rel_error, r.max_exchange, r.frozen_rel_error, r.t.size(),
                                       ww_status_of(r.status)};
  });
}

}  // extern "C"
