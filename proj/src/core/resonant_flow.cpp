#include "resonant_flow.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "error.hpp"

namespace wwbnf {

namespace {

constexpr cplx kI{0.0, 1.0};

// One contribution i c e^{i theta t} w^a w^b to d/dt w_target.
struct GradTerm {
  std::size_t target;
  std::size_t a, b;
  int sa, sb;
  cplx c;
  double theta;
};

cplx var(const std::vector<cplx>& w, std::size_t idx, int sigma) { return sigma > 0 ? w[idx] : std::conj(w[idx]); }

class Field {
 public:
  Field(const PhysicalParams& p, const CubicHamiltonian& h, const std::vector<std::int64_t>& modes) {
    std::map<std::int64_t, std::size_t> index;
    for (std::size_t i = 0; i < modes.size(); ++i) index[modes[i]] = i;
    for (const auto& t : h.terms()) {
      const cplx c = static_cast<double>(t.mult) * t.coeff;
      const double theta = phase_of(p, t.key);
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& v = t.key[i];
        if (v.sigma > 0) continue;
        const auto& a = t.key[(i + 1) % 3];
        const auto& b = t.key[(i + 2) % 3];
        terms_.push_back({index.at(v.j), index.at(a.j), index.at(b.j), a.sigma, b.sigma, c, theta});
      }
    }
  }

  void eval(double t, const std::vector<cplx>& w, std::vector<cplx>& out) const {
    std::fill(out.begin(), out.end(), cplx{});
    for (const auto& g : terms_) {
      out[g.target] += kI * g.c * std::polar(1.0, g.theta * t) * var(w, g.a, g.sa) * var(w, g.b, g.sb);
    }
  }

 private:
  std::vector<GradTerm> terms_;
};

}  // namespace

FlowScheme parse_scheme(const std::string& s) {
  if (s == "implicit-midpoint") return FlowScheme::ImplicitMidpoint;
  if (s == "rk4-rotating-frame" || s == "rk4") return FlowScheme::Rk4RotatingFrame;
  fail(ErrorCode::InvalidArgument, "unknown scheme '" + s + "' (implicit-midpoint | rk4-rotating-frame)");
}

std::string to_string(FlowScheme s) {
  return s == FlowScheme::ImplicitMidpoint ? "implicit-midpoint" : "rk4-rotating-frame";
}

void FlowConfig::validate() const {
  require(dt > 0.0 && std::isfinite(dt), "dt must be > 0");
  require(t_final > 0.0 && std::isfinite(t_final), "T must be > 0");
  require(record_every >= 1, "record_every must be >= 1");
  require(fixed_point_tol > 0.0, "fixed-point tolerance must be > 0");
  require(max_iterations >= 1, "max_iterations must be >= 1");
}

std::pair<SpectralState, SpectralState> split_low_high(const SpectralState& z, double cutoff) {
  SpectralState lo(z.max_mode()), hi(z.max_mode());
  for (int j = -z.max_mode(); j <= z.max_mode(); ++j) {
    if (j == 0) continue;
    (std::abs(j) <= cutoff ? lo : hi)[j] = z[j];
  }
  return {std::move(lo), std::move(hi)};
}

SpectralState rotate(const PhysicalParams& p, const SpectralState& w, double t) {
  SpectralState z(w.max_mode());
  for (int j = -w.max_mode(); j <= w.max_mode(); ++j) {
    if (j == 0) continue;
    z[j] = std::polar(1.0, omega(p, j) * t) * w[j];
  }
  return z;
}

SpectralState Trajectory::state(std::size_t i) const { return rotate(params, frame.at(i), t.at(i)); }

double Trajectory::modulus(std::size_t i, std::int64_t j) const { return std::abs(frame.at(i).at(j)); }

Trajectory integrate_resonant(const PhysicalParams& p, const CubicHamiltonian& h_res, const SpectralState& z0,
                              const FlowConfig& cfg) {
  p.validate();
  cfg.validate();
  Trajectory traj;
  traj.params = p;
  traj.cutoff = cfg.low_cutoff > 0.0 ? cfg.low_cutoff : resonance_cutoff(p);
  const std::int64_t support = h_res.support();
  if (static_cast<double>(support) > traj.cutoff) {
    std::ostringstream os;
    os << "resonant Hamiltonian reaches |j|=" << support << " beyond the low-mode cutoff " << traj.cutoff;
    fail(ErrorCode::Domain, os.str());
  }
  if (support > z0.max_mode()) {
    fail(ErrorCode::Domain, "state truncation N=" + std::to_string(z0.max_mode()) +
                                " is below the Hamiltonian support " + std::to_string(support));
  }

  // Only modes touched by H move in the interaction frame; the rest stay bit-exact.
  std::vector<std::int64_t> active;
  for (const auto& t : h_res.terms())
    for (const auto& m : t.key) active.push_back(m.j);
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  const Field field(p, h_res, active);

  SpectralState w = z0;
  w[0] = 0.0;
  std::vector<cplx> x(active.size()), f(active.size()), y(active.size()), tmp(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) x[i] = w[active[i]];

  const auto n_steps = static_cast<std::int64_t>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
  const double h = (cfg.backward ? -1.0 : 1.0) * cfg.t_final / double(n_steps);
  auto store = [&](double t) {
    for (std::size_t i = 0; i < active.size(); ++i) w[active[i]] = x[i];
    traj.t.push_back(t);
    traj.frame.push_back(w);
  };
  store(cfg.t_start);
  if (active.empty()) {
    for (std::int64_t n = cfg.record_every; n <= n_steps; n += cfg.record_every) store(cfg.t_start + double(n) * h);
    if (n_steps % cfg.record_every != 0) store(cfg.t_start + double(n_steps) * h);
    return traj;
  }

  std::vector<cplx> k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    const double t0 = cfg.t_start + double(n - 1) * h;
    if (cfg.scheme == FlowScheme::ImplicitMidpoint) {
      const double tm = t0 + 0.5 * h;
      field.eval(t0, x, f);
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + h * f[i];
      double scale = 1.0;
      for (const auto& v : x) scale = std::max(scale, std::abs(v));
      int it = 0;
      for (;;) {
        ++it;
        for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = 0.5 * (x[i] + y[i]);
        field.eval(tm, tmp, f);
        double diff = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          const cplx nv = x[i] + h * f[i];
          diff = std::max(diff, std::abs(nv - y[i]));
          y[i] = nv;
        }
        if (!std::isfinite(diff)) fail(ErrorCode::Numeric, "non-finite state in implicit midpoint");
        if (diff <= cfg.fixed_point_tol * scale) break;
        if (it >= cfg.max_iterations) {
          std::ostringstream os;
          os << "implicit midpoint fixed point did not contract after " << it << " iterations at t=" << t0
             << " (last increment " << diff << ")";
          fail(ErrorCode::NoConvergence, os.str());
        }
      }
      traj.max_iterations_used = std::max(traj.max_iterations_used, it);
      x = y;
    } else {
      field.eval(t0, x, k1);
      for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
      field.eval(t0 + 0.5 * h, tmp, k2);
      for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
      field.eval(t0 + 0.5 * h, tmp, k3);
      for (std::size_t i = 0; i < x.size(); ++i) tmp[i] = x[i] + h * k3[i];
      field.eval(t0 + h, tmp, k4);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      for (const auto& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) fail(ErrorCode::Numeric, "non-finite state in RK4");
    }
    if (n % cfg.record_every == 0 || n == n_steps) store(cfg.t_start + double(n) * h);
  }
  return traj;
}

std::vector<FlowDiagnostics> flow_diagnostics(const Trajectory& traj, const CubicHamiltonian& h_res, double s) {
  std::vector<FlowDiagnostics> out;
  out.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const SpectralState z = traj.state(i);
    const auto [lo, hi] = split_low_high(z, traj.cutoff);
    FlowDiagnostics d;
    d.t = traj.t[i];
    d.h2 = hamiltonian_h2(traj.params, lo);
    d.h3 = h_res.evaluate(lo).real();
    for (int j = -z.max_mode(); j <= z.max_mode(); ++j) d.momentum += double(j) * std::norm(z[j]);
    d.sobolev_norm = sobolev_norm(z, s);
    const double hs = sobolev_norm(hi, s);
    d.equiv_norm = std::sqrt(d.h2 + hs * hs);
    out.push_back(d);
  }
  return out;
}

double norm_equivalence_constant(const PhysicalParams& p, std::int64_t n_max, double s) {
  require(n_max >= 1, "need at least one mode");
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::int64_t j = 1; j <= n_max; ++j) {
    const double a = std::pow(double(j), 2.0 * s) / omega(p, double(j));
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  return std::sqrt(hi / lo);
}

void write_flow_csv(const std::string& path, const Trajectory& traj, const std::vector<FlowDiagnostics>& diag,
                    int dump_modes) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot open " + path + " for writing");
  os << std::setprecision(17) << "t,H2,H3,momentum,sobolev_s_norm,equiv_norm";
  for (int j = -dump_modes; j <= dump_modes; ++j) {
    if (j != 0) os << ",re_z" << j << ",im_z" << j;
  }
  os << '\n';
  for (std::size_t i = 0; i < diag.size(); ++i) {
    const auto& d = diag[i];
    os << d.t << ',' << d.h2 << ',' << d.h3 << ',' << d.momentum << ',' << d.sobolev_norm << ',' << d.equiv_norm;
    if (dump_modes > 0) {
      const SpectralState z = traj.state(i);
      for (int j = -dump_modes; j <= dump_modes; ++j) {
        if (j == 0) continue;
        const cplx v = z.at(j);
        os << ',' << v.real() << ',' << v.imag();
      }
    }
    os << '\n';
  }
  if (!os) fail(ErrorCode::Io, "write failed for " + path);
}

}  // namespace wwbnf
