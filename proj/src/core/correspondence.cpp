#include "correspondence.hpp"

#include <cmath>

#include "error.hpp"

namespace wwbnf {

namespace {

std::array<double, 4> low_moduli(const FourierField& z) {
  return {std::abs(z.at(-2)), std::abs(z.at(-1)), std::abs(z.at(1)), std::abs(z.at(2))};
}

double dist(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  double s = 0.0;
  for (int i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

void CorrespondenceConfig::validate() const {
  require(eps > 0.0, "epsilon must be > 0");
  require(dt > 0.0, "dt must be > 0");
  require(record_every >= 1, "record_every must be >= 1");
  require(ratio >= 0.0, "mode ratio must be >= 0");
}

CorrespondenceResult run_correspondence(const PhysicalParams& p, const CorrespondenceConfig& cfg) {
  p.validate();
  cfg.validate();
  const double t_final = cfg.t_final > 0.0 ? cfg.t_final : 1.0 / cfg.eps;

  FourierField u(2);
  u[1] = cplx(0.0, 1.0);
  u[2] = cfg.ratio * std::polar(1.0, cfg.phase) * cplx(0.0, 1.0);
  const WaveState s0 = seed_from_complex(p, cfg.m, u, cfg.eps, cfg.sobolev_s);

  SolverConfig sc;
  sc.m = cfg.m;
  sc.dt = cfg.dt;
  sc.t_final = t_final;
  sc.dno_order = cfg.dno_order;
  sc.record_every = cfg.record_every;
  sc.sobolev_s = cfg.sobolev_s;
  sc.keep_states = true;
  const WwResult ww = integrate_ww(p, s0, sc);

  const BonyWeylConfig bw;
  auto complex_of = [&](const WaveState& w) {
    return to_complex(p, field_of(w.eta), good_unknown(p, w.eta, w.psi, bw, cfg.dno_order));
  };
  const FourierField z0 = complex_of(s0);

  const auto h = assemble_resonant_hamiltonian(p, std::max<std::int64_t>(2, z0.max_mode()));
  FlowConfig fc;
  fc.dt = cfg.dt;
  fc.t_final = t_final;
  fc.record_every = cfg.record_every;
  fc.low_cutoff = std::max(resonance_cutoff(p), double(h.support()));
  const Trajectory traj = integrate_resonant(p, h, z0, fc);

  CorrespondenceResult res;
  res.status = ww.status;
  const auto a0 = low_moduli(z0);
  const double n0 = dist(a0, {0, 0, 0, 0});
  const std::size_t n = std::min(ww.states.size(), traj.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(ww.records[i].t - traj.t[i]) > 1e-9 * std::max(1.0, t_final)) {
      fail(ErrorCode::Internal, "record times of the two solvers drifted apart");
    }
    const auto af = low_moduli(complex_of(ww.states[i]));
    const auto ab = low_moduli(traj.state(i));
    res.t.push_back(traj.t[i]);
    res.full.push_back(af);
    res.bnf.push_back(ab);
    res.max_rel_error = std::max(res.max_rel_error, dist(af, ab) / n0);
    res.max_exchange = std::max(res.max_exchange, dist(ab, a0) / n0);
    res.frozen_rel_error = std::max(res.frozen_rel_error, dist(af, a0) / n0);
  }
  return res;
}

}  // namespace wwbnf
