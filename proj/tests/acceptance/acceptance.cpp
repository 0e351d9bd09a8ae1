// One pass/fail line per acceptance criterion. Exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "birkhoff.hpp"
#include "correspondence.hpp"
#include "elliptic_oracle.hpp"
#include "resonance.hpp"
#include "resonant_flow.hpp"
#include "verify.hpp"
#include "waterwaves.hpp"

using namespace wwbnf;

namespace {

const PhysicalParams kUnit(1.0, 1.0, Depth::infinite());
const PhysicalParams kWilton(1.0, 0.5, Depth::infinite());

struct Outcome {
  bool passed = false;
  std::string detail;
};

int failures = 0;

void criterion(const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0 || dt < budget_s;
  const bool ok = o.passed && in_time;
  if (!ok) ++failures;
  char timing[96];
  if (budget_s > 0)
    std::snprintf(timing, sizeof timing, "%.2fs (budget %.0fs)", dt, budget_s);
  else
    std::snprintf(timing, sizeof timing, "%.2fs", dt);
  std::printf("%s  %-26s %s; %s\n", ok ? "PASS" : "FAIL", name, o.detail.c_str(), timing);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

bool is_wilton_orbit(const Triple& t) {
  std::vector<std::int64_t> js;
  for (const auto& m : t.modes) js.push_back(std::llabs(m.j));
  std::sort(js.begin(), js.end());
  return js == std::vector<std::int64_t>{1, 1, 2} && momentum_conserved(t.modes) && std::abs(t.phase) < 1e-9;
}

std::vector<double> sample(int m, const std::function<double(double)>& f) {
  std::vector<double> v(m);
  for (int i = 0; i < m; ++i) v[i] = f(2 * std::numbers::pi * i / m);
  return v;
}

double elliptic_oracle_error() {
  const PhysicalParams p(1.0, 1.0, Depth::finite(1.0));
  const double a = 0.05;
  const oracle::Profile eta{[&](double x) { return a * std::cos(x); }, [&](double x) { return -a * std::sin(x); },
                            [&](double x) { return -a * std::cos(x); }};
  const oracle::Profile psi{[](double x) { return std::cos(x) + 0.5 * std::sin(2 * x); },
                            [](double x) { return -std::sin(x) + std::cos(2 * x); },
                            [](double x) { return -std::cos(x) - 2 * std::sin(2 * x); }};
  const auto fine = oracle::elliptic_dno(1.0, eta, psi, 256, 128);
  const auto coarse = oracle::elliptic_dno(1.0, eta, psi, 128, 64);
  const auto g = dno_apply(p, sample(256, eta.f), sample(256, psi.f), 3);
  double err = 0.0, scale = 0.0;
  for (int i = 0; i < 128; ++i) {
    const double ref = (4 * fine[2 * i] - coarse[i]) / 3;
    err = std::max(err, std::abs(ref - g[2 * i]));
    scale = std::max(scale, std::abs(ref));
  }
  return err / scale;
}

}  // namespace

int main() {
  criterion("inequality_sweep", 1.0, [] {
    const auto r = verify_lemma_bounds(kUnit, 1000);
    return Outcome{r.violations_a == 0 && r.checked_a == 500500,
                   "checked " + std::to_string(r.checked_a) + " pairs n3<=n2<=1000, violations " +
                       std::to_string(r.violations_a) + fmt(", worst margin %.3g", r.worst_margin_a)};
  });

  criterion("resonance_ground_truth", 10.0, [] {
    const auto w = enumerate_resonances(kWilton, 512, 1e-9);
    const auto g = enumerate_resonances(kUnit, 512, 1e-9);
    bool orbit = w.size() == 2;
    for (const auto& t : w) orbit = orbit && is_wilton_orbit(t);
    return Outcome{orbit && g.empty(), "Wilton: " + std::to_string(w.size()) + " triples" +
                                           (orbit ? " (orbit of (2;1,1))" : " (unexpected)") +
                                           ", kappa=1: " + std::to_string(g.size())};
  });

  criterion("coefficient_oracle", 30.0, [] {
    double worst = 0.0;
    std::size_t compared = 0, missing = 0;
    for (const auto& p : {kWilton, kUnit}) {
      const auto c = compare_tables(expand_h3_from_real(p, 20), full_cubic_hamiltonian(p, 20));
      worst = std::max(worst, c.max_abs_diff);
      compared += c.compared;
      missing += c.missing;
    }
    return Outcome{missing == 0 && compared > 0 && worst <= 1e-12,
                   fmt("max |diff| %.3g over %.0f keys, |j|<=20 (tol 1e-12)", worst, double(compared))};
  });

  criterion("bracket_cancellation", 0, [] {
    const auto h = assemble_resonant_hamiltonian(kWilton, 64);
    const auto br = poisson_bracket(Polynomial::from_cubic(h), Polynomial::quadratic(kWilton, 64));
    const double m = br.max_abs_coeff();
    return Outcome{h.size() > 0 && m < 1e-13,
                   fmt("max |coeff| of {H3_bnf, H2} = %.3g over %.0f resonant terms (tol 1e-13)", m, double(h.size()))};
  });

  criterion("homological_residual", 0, [] {
    const auto resonant = enumerate_resonances(kWilton, 90, kDefaultResonanceTol);
    double worst = 0.0;
    std::size_t keys = 0, res_keys = 0;
    for (int i = 0; i < 50; ++i) {
      const auto r = random_homological_input(1 + std::uint64_t(i), 200, 30);
      const auto s = solve_homological(kWilton, r, kDefaultResonanceTol, resonant);
      worst = std::max(worst, s.residual);
      keys += r.size();
      res_keys += s.resonant_keys;
    }
    return Outcome{worst < 1e-12 && keys == 50 * 200 && res_keys > 0,
                   fmt("max residual %.3g over 50 x 200 keys, %.0f resonant (tol 1e-12)", worst, double(res_keys))};
  });

  criterion("resonant_flow_conservation", 60.0, [] {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> nd;
    SpectralState z0(6);
    for (int j = -6; j <= 6; ++j)
      if (j) z0[j] = 0.02 * cplx(nd(rng), nd(rng));
    const auto h = assemble_resonant_hamiltonian(kWilton, 64);
    FlowConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 1000.0;
    cfg.record_every = 1000;
    const auto traj = integrate_resonant(kWilton, h, z0, cfg);
    const auto d = flow_diagnostics(traj, h, 8.0);
    double d2 = 0, d3 = 0, dm = 0;
    for (const auto& r : d) {
      d2 = std::max(d2, std::abs(r.h2 - d[0].h2));
      d3 = std::max(d3, std::abs(r.h3 - d[0].h3));
      dm = std::max(dm, std::abs(r.momentum - d[0].momentum));
    }
    d2 /= std::abs(d[0].h2);
    d3 /= std::abs(d[0].h3);
    dm /= std::abs(d[0].momentum);
    bool exact = true;
    for (const auto& w : traj.frame)
      for (int j = -6; j <= 6; ++j)
        if (std::abs(j) > 2) exact = exact && w[j] == z0[j];
    return Outcome{d2 < 1e-8 && d3 < 1e-8 && dm < 1e-8 && exact && traj.t.back() == 1000.0,
                   fmt("rel drift H2 %.2g, H3 %.2g, momentum %.2g (tol 1e-8)", d2, d3, dm) +
                       (exact ? ", high modes bit-exact" : ", high modes CHANGED")};
  });

  criterion("full_solver_conservation", 300.0, [] {
    const auto s0 = seed_state(kUnit, 256, 0.01, 8.0);
    SolverConfig c;
    c.m = 256;
    c.dt = 0.01;
    c.t_final = 100.0;
    c.sobolev_s = 8.0;
    c.record_every = 100;
    const auto r = integrate_ww(kUnit, s0, c);
    const auto& r0 = r.records.front();
    double dh = 0, dp = 0;
    for (const auto& x : r.records) {
      dh = std::max(dh, std::abs(x.h - r0.h));
      dp = std::max(dp, std::abs(x.momentum - r0.momentum));
    }
    dh /= std::abs(r0.h);
    dp /= std::abs(r0.momentum);
    const double oracle = elliptic_oracle_error();
    return Outcome{r.status == WwStatus::Completed && dh < 1e-6 && dp < 1e-8 && oracle < 1e-4,
                   fmt("rel drift H %.2g (tol 1e-6), momentum %.2g (tol 1e-8), DNO vs elliptic oracle %.2g (tol 1e-4)",
                       dh, dp, oracle)};
  });

  criterion("lifespan_scaling", 1800.0, [] {
    LifespanConfig cfg;
    cfg.epsilons = {0.08, 0.04, 0.02};
    const auto r = lifespan_experiment(kUnit, cfg);
    std::string rows;
    for (const auto& x : r.rows)
      rows += fmt(" eps=%.2g:T=%.6g", x.eps, x.t_eps) + (x.censored ? "(censored)" : "");
    const bool ok = r.all_censored || r.fit.exponent >= 1.8;
    return Outcome{ok, fmt("p=%.3g [%.3g, %.3g]", r.fit.exponent, r.fit.ci_low, r.fit.ci_high) +
                           (r.all_censored ? ", all runs censored at T_max;" : ";") + rows};
  });

  criterion("normal_form_correspondence", 0, [] {
    const auto r = run_correspondence(kWilton, CorrespondenceConfig{});
    return Outcome{r.status == WwStatus::Completed && r.max_rel_error <= 0.2,
                   fmt("max rel error %.3g over t<=1/eps at eps=0.02 (tol 0.2), exchange %.3g", r.max_rel_error,
                       r.max_exchange)};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
