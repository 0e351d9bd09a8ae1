#include "commands.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <vector>

namespace cli {

namespace {

void check(wwbnf_status s, const std::string& what) {
  if (s != WWBNF_OK) throw ApiError(s, what + ": " + wwbnf_last_error());
}

// call f(handle_out) and adopt the result
template <class T, void (*Free)(T*), class F>
std::unique_ptr<T, void (*)(T*)> make(F&& f, const std::string& what) {
  T* raw = nullptr;
  check(f(&raw), what);
  return std::unique_ptr<T, void (*)(T*)>(raw, Free);
}

std::string f17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(Context& c, const std::string& name) {
  const auto path = c.dir / name;
  std::ofstream os(path);
  if (!os) throw ApiError(WWBNF_IO, "cannot open " + path.string() + " for writing");
  c.outputs.push_back(name);
  return os;
}

std::string triple_cells(const int* sigma, const int64_t* j) {
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (i) s += ',';
    s += std::to_string(sigma[i]) + ',' + std::to_string(j[i]);
  }
  return s;
}

json triple_json(const wwbnf_triple& t) {
  json m = json::array();
  for (int i = 0; i < 3; ++i) m.push_back({{"sigma", t.sigma[i]}, {"j", t.j[i]}});
  return {{"modes", m}, {"phase", real_json(t.phase)}};
}

double resonance_tol(RunConfig& cfg) { return cfg.real("resonance", "tol", wwbnf_default_resonance_tol()); }

int to_int(std::int64_t v, const std::string& what) {
  if (v < INT32_MIN || v > INT32_MAX) throw ConfigError(what + " out of range");
  return static_cast<int>(v);
}

// uniform on [-1, 1) from raw mt19937_64 output, identical on every platform
double unit(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; }

wwbnf_ww_config read_ww(RunConfig& cfg) {
  wwbnf_ww_config w;
  wwbnf_ww_config_default(&w);
  w.m = to_int(cfg.integer("ww", "m", w.m), "ww.m");
  w.dno_order = to_int(cfg.integer("ww", "dno_order", w.dno_order), "ww.dno_order");
  w.dt = cfg.real("ww", "dt", w.dt);
  w.t_final = cfg.real("ww", "t_final", w.t_final);
  w.dealias = cfg.real("ww", "dealias", w.dealias);
  w.filter_strength = cfg.real("ww", "filter_strength", w.filter_strength);
  w.record_every = to_int(cfg.integer("ww", "record_every", w.record_every), "ww.record_every");
  w.sobolev_s = cfg.real("ww", "sobolev_s", w.sobolev_s);
  w.norm_ceiling = cfg.real("ww", "norm_ceiling", w.norm_ceiling);
  w.stop_norm = cfg.real("ww", "stop_norm", w.stop_norm);
  w.mode_count = to_int(cfg.integer("ww", "mode_count", w.mode_count), "ww.mode_count");
  return w;
}

}  // namespace

wwbnf_params read_params(RunConfig& cfg) {
  wwbnf_params p;
  p.g = cfg.real("params", "g", 1.0);
  p.kappa = cfg.real("params", "kappa", 1.0);
  p.depth = cfg.real("params", "depth", INFINITY);
  return p;
}

int cmd_resonances(Context& c) {
  const auto p = read_params(c.cfg);
  const auto max_j = c.cfg.integer("resonance", "max_j", 512);
  const double tol = resonance_tol(c.cfg);
  auto list = make<wwbnf_triple_list, wwbnf_triple_list_free>(
      [&](wwbnf_triple_list** o) { return wwbnf_resonances(&p, max_j, tol, c.threads, o); }, "resonances");
  double gap = 0.0;
  wwbnf_triple witness{};
  check(wwbnf_min_gap(&p, max_j, tol, c.threads, &gap, &witness), "min_gap");

  auto os = open_out(c, "resonances.csv");
  os << "sigma1,j1,sigma2,j2,sigma3,j3,phase\n";
  const size_t n = wwbnf_triple_list_size(list.get());
  for (size_t i = 0; i < n; ++i) {
    wwbnf_triple t;
    check(wwbnf_triple_list_get(list.get(), i, &t), "resonances");
    os << triple_cells(t.sigma, t.j) << ',' << f17(t.phase) << '\n';
  }
  std::cout << "count " << n << "\nmin_gap " << f17(gap) << '\n';
  c.meta["count"] = n;
  c.meta["min_gap"] = real_json(gap);
  c.meta["min_gap_witness"] = triple_json(witness);
  return kOk;
}

int cmd_min_gap(Context& c) {
  const auto p = read_params(c.cfg);
  const auto max_j = c.cfg.integer("resonance", "max_j", 512);
  const double tol = resonance_tol(c.cfg);
  const double exclude = c.cfg.real("resonance", "exclude_tol", tol);
  double gap = 0.0;
  wwbnf_triple w{};
  check(wwbnf_min_gap(&p, max_j, exclude, c.threads, &gap, &w), "min_gap");
  auto os = open_out(c, "min_gap.csv");
  os << "max_j,gap,sigma1,j1,sigma2,j2,sigma3,j3,phase\n";
  os << max_j << ',' << f17(gap) << ',' << triple_cells(w.sigma, w.j) << ',' << f17(w.phase) << '\n';
  std::cout << f17(gap) << '\n';
  c.meta["min_gap"] = real_json(gap);
  c.meta["witness"] = triple_json(w);
  return kOk;
}

int cmd_wilton(Context& c) {
  const auto p = read_params(c.cfg);
  const auto j = c.cfg.integer("wilton", "j", 1);
  double kappa = 0.0;
  check(wwbnf_wilton_kappa(p.g, p.depth, j, &kappa), "wilton");
  auto os = open_out(c, "wilton.csv");
  os << "j,kappa\n" << j << ',' << f17(kappa) << '\n';
  std::cout << f17(kappa) << '\n';
  c.meta["kappa"] = real_json(kappa);
  return kOk;
}

int cmd_coeffs(Context& c) {
  const auto p = read_params(c.cfg);
  const auto max_j = c.cfg.integer("coeffs", "max_j", 16);
  const auto kind = c.cfg.text("coeffs", "kind", "full");
  const double tol = resonance_tol(c.cfg);
  using Cubic = std::unique_ptr<wwbnf_cubic, void (*)(wwbnf_cubic*)>;
  Cubic h(nullptr, wwbnf_cubic_free);
  if (kind == "full") {
    h = make<wwbnf_cubic, wwbnf_cubic_free>([&](wwbnf_cubic** o) { return wwbnf_cubic_full(&p, max_j, o); }, "coeffs");
  } else if (kind == "resonant") {
    h = make<wwbnf_cubic, wwbnf_cubic_free>(
        [&](wwbnf_cubic** o) { return wwbnf_cubic_resonant(&p, max_j, tol, c.threads, o); }, "coeffs");
  } else if (kind == "real") {
    h = make<wwbnf_cubic, wwbnf_cubic_free>([&](wwbnf_cubic** o) { return wwbnf_cubic_from_real(&p, max_j, o); },
                                            "coeffs");
  } else {
    throw ConfigError("coeffs.kind must be full, resonant or real (got '" + kind + "')");
  }
  check(wwbnf_cubic_write(h.get(), (c.dir / "coeffs.txt").c_str()), "coeffs");
  c.outputs.push_back("coeffs.txt");
  auto os = open_out(c, "coeffs.csv");
  os << "sigma1,j1,sigma2,j2,sigma3,j3,re,im,multiplicity,phase\n";
  const size_t n = wwbnf_cubic_size(h.get());
  for (size_t i = 0; i < n; ++i) {
    wwbnf_cubic_term t;
    check(wwbnf_cubic_get(h.get(), i, &t), "coeffs");
    os << triple_cells(t.sigma, t.j) << ',' << f17(t.re) << ',' << f17(t.im) << ',' << t.multiplicity << ','
       << f17(t.phase) << '\n';
  }
  std::cout << "terms " << n << '\n';
  c.meta["terms"] = n;
  return kOk;
}

int cmd_verify(Context& c) {
  const auto p = read_params(c.cfg);
  wwbnf_verify_config v;
  wwbnf_verify_config_default(&v);
  auto& cfg = c.cfg;
  v.lemma_max_j = cfg.integer("verify", "lemma_max_j", v.lemma_max_j);
  v.oracle_max_j = cfg.integer("verify", "oracle_max_j", v.oracle_max_j);
  v.oracle_tol = cfg.real("verify", "oracle_tol", v.oracle_tol);
  v.bnf_max_j = cfg.integer("verify", "bnf_max_j", v.bnf_max_j);
  v.homological_instances = to_int(cfg.integer("verify", "homological_instances", v.homological_instances),
                                   "verify.homological_instances");
  v.homological_keys = to_int(cfg.integer("verify", "homological_keys", v.homological_keys), "verify.homological_keys");
  v.homological_max_index = cfg.integer("verify", "homological_max_index", v.homological_max_index);
  v.homological_tol = cfg.real("verify", "homological_tol", v.homological_tol);
  v.bracket_tol = cfg.real("verify", "bracket_tol", v.bracket_tol);
  v.resonance_tol = resonance_tol(cfg);
  v.seed = c.seed;
  v.threads = c.threads;
  const std::string table = cfg.text("verify", "table", "");
  v.table_path = table.empty() ? nullptr : table.c_str();

  auto rep = make<wwbnf_verify, wwbnf_verify_free>([&](wwbnf_verify** o) { return wwbnf_verify_run(&p, &v, o); },
                                                   "verify");
  json checks = json::array();
  std::vector<std::string> failed;
  std::printf("%-22s %-6s %-24s %-24s\n", "check", "result", "value", "tolerance");
  for (size_t i = 0; i < wwbnf_verify_count(rep.get()); ++i) {
    wwbnf_check k;
    check(wwbnf_verify_get(rep.get(), i, &k), "verify");
    std::printf("%-22s %-6s %-24s %-24s\n", k.name, k.passed ? "PASS" : "FAIL", f17(k.value).c_str(),
                f17(k.tolerance).c_str());
    checks.push_back({{"name", k.name},
                      {"passed", k.passed != 0},
                      {"value", real_json(k.value)},
                      {"tolerance", real_json(k.tolerance)},
                      {"detail", k.detail}});
    if (!k.passed) failed.push_back(std::string(k.name) + " (" + k.detail + ")");
  }
  const bool ok = failed.empty();
  const json report = {{"passed", ok}, {"lemma_max_j", v.lemma_max_j}, {"checks", checks}};
  open_out(c, "verify.json") << report.dump(2) << '\n';
  c.meta["passed"] = ok;
  c.meta["lemma_max_j"] = v.lemma_max_j;
  for (const auto& f : failed) std::cerr << "FAILED: " << f << '\n';
  return ok ? kOk : kCheckFailed;
}

int cmd_bnf_flow(Context& c) {
  const auto p = read_params(c.cfg);
  auto& cfg = c.cfg;
  wwbnf_flow_config f;
  wwbnf_flow_config_default(&f);
  f.dt = cfg.real("flow", "dt", f.dt);
  f.t_final = cfg.real("flow", "t_final", 10.0);
  const auto scheme = cfg.text("flow", "scheme", "implicit-midpoint");
  if (scheme == "implicit-midpoint") {
    f.scheme = WWBNF_IMPLICIT_MIDPOINT;
  } else if (scheme == "rk4-rotating-frame") {
    f.scheme = WWBNF_RK4_ROTATING_FRAME;
  } else {
    throw ConfigError("flow.scheme must be implicit-midpoint or rk4-rotating-frame (got '" + scheme + "')");
  }
  f.record_every = to_int(cfg.integer("flow", "record_every", f.record_every), "flow.record_every");
  f.sobolev_s = cfg.real("flow", "sobolev_s", f.sobolev_s);
  f.low_cutoff = cfg.real("flow", "low_cutoff", f.low_cutoff);
  f.backward = to_int(cfg.integer("flow", "backward", f.backward), "flow.backward");
  f.t_start = cfg.real("flow", "t_start", f.t_start);
  f.fixed_point_tol = cfg.real("flow", "fixed_point_tol", f.fixed_point_tol);
  f.max_iterations = to_int(cfg.integer("flow", "max_iterations", f.max_iterations), "flow.max_iterations");
  f.bnf_max_j = cfg.integer("bnf", "max_j", f.bnf_max_j);
  f.resonance_tol = resonance_tol(cfg);
  f.threads = c.threads;
  const auto n = cfg.integer("flow", "modes", 16);
  const auto init = cfg.text("flow", "init", "random");
  const double amp = cfg.real("flow", "amplitude", 0.02);
  const auto dump = to_int(cfg.integer("flow", "dump_modes", 4), "flow.dump_modes");
  if (n < 2 || n > (1 << 20)) throw ConfigError("flow.modes must be in [2, 2^20]");

  std::vector<double> re(2 * n + 1, 0.0), im(2 * n + 1, 0.0);
  if (init == "random") {
    std::mt19937_64 rng(c.seed);
    for (int64_t j = -n; j <= n; ++j) {
      if (j == 0) continue;
      re[j + n] = amp * unit(rng);
      im[j + n] = amp * unit(rng);
    }
  } else if (init == "two_mode") {
    const double ratio = cfg.real("flow", "ratio", 0.5);
    const double phase = cfg.real("flow", "phase", M_PI / 2);
    im[n + 1] = amp;
    re[n + 2] = -amp * ratio * std::sin(phase);
    im[n + 2] = amp * ratio * std::cos(phase);
  } else {
    throw ConfigError("flow.init must be random or two_mode (got '" + init + "')");
  }

  auto fl = make<wwbnf_flow, wwbnf_flow_free>(
      [&](wwbnf_flow** o) { return wwbnf_flow_run(&p, &f, n, re.data(), im.data(), o); }, "bnf-flow");
  check(wwbnf_flow_write_csv(fl.get(), (c.dir / "flow.csv").c_str(), dump), "bnf-flow");
  c.outputs.push_back("flow.csv");

  const size_t nr = wwbnf_flow_size(fl.get());
  wwbnf_flow_record r0, r;
  check(wwbnf_flow_record_get(fl.get(), 0, &r0), "bnf-flow");
  double d2 = 0, d3 = 0, dm = 0;
  for (size_t i = 0; i < nr; ++i) {
    check(wwbnf_flow_record_get(fl.get(), i, &r), "bnf-flow");
    d2 = std::max(d2, std::abs(r.h2 - r0.h2));
    d3 = std::max(d3, std::abs(r.h3 - r0.h3));
    dm = std::max(dm, std::abs(r.momentum - r0.momentum));
  }
  c.meta["resonant_terms"] = wwbnf_flow_terms(fl.get());
  c.meta["low_cutoff_used"] = real_json(wwbnf_flow_cutoff(fl.get()));
  c.meta["max_fixed_point_iterations"] = wwbnf_flow_iterations_used(fl.get());
  c.meta["records"] = nr;
  c.meta["max_abs_drift"] = {{"H2", real_json(d2)}, {"H3", real_json(d3)}, {"momentum", real_json(dm)}};
  std::cout << "records " << nr << "\nH2_drift " << f17(d2) << "\nH3_drift " << f17(d3) << '\n';
  return kOk;
}

int cmd_ww_sim(Context& c) {
  const auto p = read_params(c.cfg);
  auto w = read_ww(c.cfg);
  const double eps = c.cfg.real("ww", "eps", 0.01);
  const auto init = c.cfg.text("ww", "init", "traveling");
  std::vector<double> eta(w.m > 0 ? w.m : 0), psi(eta.size());
  if (init == "traveling") {
    check(wwbnf_ww_seed(&p, w.m, eps, w.sobolev_s, eta.data(), psi.data()), "ww-sim seed");
  } else if (init == "two_mode") {
    const double ratio = c.cfg.real("ww", "ratio", 0.5);
    const double phase = c.cfg.real("ww", "phase", M_PI / 2);
    check(wwbnf_ww_seed_two_mode(&p, w.m, eps, w.sobolev_s, ratio, phase, eta.data(), psi.data()), "ww-sim seed");
  } else {
    throw ConfigError("ww.init must be traveling or two_mode (got '" + init + "')");
  }
  auto run = make<wwbnf_ww_run, wwbnf_ww_free>(
      [&](wwbnf_ww_run** o) { return wwbnf_ww_integrate(&p, &w, eta.data(), psi.data(), o); }, "ww-sim");
  check(wwbnf_ww_write_csv(run.get(), (c.dir / "ww.csv").c_str()), "ww-sim");
  c.outputs.push_back("ww.csv");

  const auto st = wwbnf_ww_status_of(run.get());
  wwbnf_ww_record a, b;
  const size_t n = wwbnf_ww_size(run.get());
  check(wwbnf_ww_record_get(run.get(), 0, &a), "ww-sim");
  check(wwbnf_ww_record_get(run.get(), n - 1, &b), "ww-sim");
  c.meta["status"] = wwbnf_ww_status_name(st);
  c.meta["partial"] = st != WWBNF_WW_COMPLETED;
  c.meta["message"] = wwbnf_ww_message(run.get());
  c.meta["t_end"] = real_json(wwbnf_ww_t_end(run.get()));
  c.meta["steps"] = wwbnf_ww_steps(run.get());
  c.meta["records"] = n;
  c.meta["H_relative_change"] = real_json(std::abs(b.h - a.h) / std::abs(a.h));
  c.meta["momentum_change"] = real_json(std::abs(b.momentum - a.momentum));
  std::cout << "status " << wwbnf_ww_status_name(st) << "\nt_end " << f17(wwbnf_ww_t_end(run.get())) << '\n';
  return st == WWBNF_WW_NOT_FINITE ? kCheckFailed : kOk;
}

int cmd_lifespan(Context& c) {
  const auto p = read_params(c.cfg);
  wwbnf_lifespan_config l;
  wwbnf_lifespan_config_default(&l);
  const auto eps = c.cfg.reals("lifespan", "epsilons", std::vector<double>(l.epsilons, l.epsilons + l.n_epsilons));
  l.epsilons = eps.data();
  l.n_epsilons = eps.size();
  l.sobolev_s = c.cfg.real("lifespan", "sobolev_s", l.sobolev_s);
  l.threshold_factor = c.cfg.real("lifespan", "threshold_factor", l.threshold_factor);
  l.t_max_scale = c.cfg.real("lifespan", "t_max_scale", l.t_max_scale);
  l.solver = read_ww(c.cfg);
  l.threads = c.threads;
  auto res = make<wwbnf_lifespan, wwbnf_lifespan_free>(
      [&](wwbnf_lifespan** o) { return wwbnf_lifespan_run(&p, &l, o); }, "lifespan");
  check(wwbnf_lifespan_write_csv(res.get(), (c.dir / "lifespan.csv").c_str()), "lifespan");
  c.outputs.push_back("lifespan.csv");

  json rows = json::array();
  for (size_t i = 0; i < wwbnf_lifespan_size(res.get()); ++i) {
    wwbnf_lifespan_row r;
    check(wwbnf_lifespan_row_get(res.get(), i, &r), "lifespan");
    rows.push_back({{"epsilon", real_json(r.eps)},
                    {"T_eps", real_json(r.t_eps)},
                    {"T_max", real_json(r.t_max)},
                    {"censored", r.censored != 0},
                    {"final_norm", real_json(r.final_norm)},
                    {"steps", r.steps},
                    {"status", wwbnf_ww_status_name(r.status)}});
    std::cout << "eps " << f17(r.eps) << " T_eps " << f17(r.t_eps) << (r.censored ? " (censored)" : "") << '\n';
  }
  wwbnf_lifespan_fit fit;
  check(wwbnf_lifespan_fit_get(res.get(), &fit), "lifespan");
  c.meta["rows"] = rows;
  c.meta["fit"] = {{"exponent", real_json(fit.exponent)},
                   {"intercept", real_json(fit.intercept)},
                   {"std_error", real_json(fit.std_error)},
                   {"ci95_low", real_json(fit.ci_low)},
                   {"ci95_high", real_json(fit.ci_high)},
                   {"all_censored", fit.all_censored != 0}};
  std::cout << "exponent " << f17(fit.exponent) << " ci95 [" << f17(fit.ci_low) << ", " << f17(fit.ci_high) << "]"
            << (fit.all_censored ? " all censored" : "") << '\n';
  return kOk;
}

}  // namespace cli
