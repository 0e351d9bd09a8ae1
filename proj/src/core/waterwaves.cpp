#include "waterwaves.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "error.hpp"
#include "fft.hpp"

namespace wwbnf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

using Spec = std::vector<cplx>;  // normalized half spectrum c_k, u(x) = sum_k c_k e^{ikx}
using Grid = std::vector<double>;

// Per-run spectral workspace on an M-point grid.
class Spectral {
 public:
  Spectral(const PhysicalParams& p, int m, double dealias) : p_(p), m_(m), fft_(m) {
    require(m >= 16 && is_power_of_two(m), "grid size M must be a power of two >= 16");
    require(dealias > 0.0 && dealias <= 1.0, "dealias fraction must lie in (0, 1]");
    kmax_ = std::min(m / 2 - 1, static_cast<int>(std::floor(dealias * m / 2.0)));
    g0_.resize(static_cast<std::size_t>(half()));
    for (int k = 0; k < half(); ++k) g0_[static_cast<std::size_t>(k)] = g0_symbol(p, k);
  }

  int m() const { return m_; }
  int half() const { return m_ / 2 + 1; }
  int kmax() const { return kmax_; }
  const PhysicalParams& params() const { return p_; }
  double g0(int k) const { return g0_[static_cast<std::size_t>(k)]; }

  Spec spec(std::span<const double> x) {
    Spec c(static_cast<std::size_t>(half()));
    fft_.forward(x, c);
    for (int k = 0; k < half(); ++k) c[static_cast<std::size_t>(k)] = k <= kmax_ ? c[static_cast<std::size_t>(k)] / double(m_) : cplx{};
    return c;
  }

  Grid grid(const Spec& c) {
    Grid x(static_cast<std::size_t>(m_));
    fft_.backward(c, x);
    return x;
  }

  Spec dx(Spec c) const {
    for (int k = 0; k < half(); ++k) c[static_cast<std::size_t>(k)] *= kI * double(k);
    return c;
  }

  Spec apply_g0(Spec c) const {
    for (int k = 0; k < half(); ++k) c[static_cast<std::size_t>(k)] *= g0(k);
    return c;
  }

  // A_m = D^m (m even), D^{m-1} G_0 (m odd); both even symbols.
  Spec apply_a(int order, Spec c) const {
    for (int k = 0; k < half(); ++k) {
      double s = std::pow(double(k), order % 2 == 0 ? order : order - 1);
      if (order % 2 == 1) s *= g0(k);
      c[static_cast<std::size_t>(k)] *= s;
    }
    return c;
  }

  Spec times(const Grid& a, const Grid& b) {
    Grid prod(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
    return spec(prod);
  }

  // Truncated DNO applied to psi; terms n in [first, order].
  Spec dno(const Grid& eta, const Spec& psi, int order, int first = 0) {
    std::vector<Grid> epow(static_cast<std::size_t>(order + 1));
    if (order >= 1) epow[1] = grid(spec(eta));
    for (int n = 2; n <= order; ++n) {
      auto c = times(epow[static_cast<std::size_t>(n - 1)], epow[1]);
      for (auto& v : c) v /= double(n);
      epow[static_cast<std::size_t>(n)] = grid(c);
    }
    Spec out(static_cast<std::size_t>(half()));
    for (int n = first; n <= order; ++n) {
      const Spec t = g_term(n, psi, epow);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] += t[k];
    }
    return out;
  }

  double norm_sq(const Spec& c, double s) const {
    double acc = 0.0;
    for (int k = 1; k <= kmax_; ++k) acc += std::pow(double(k), 2.0 * s) * std::norm(c[static_cast<std::size_t>(k)]);
    return 2.0 * kTwoPi * acc;
  }

  double mixed_norm(const Spec& eta, const Spec& psi, double s) const {
    return std::sqrt(norm_sq(eta, s + 0.25)) + std::sqrt(norm_sq(psi, s - 0.25));
  }

 private:
  Spec g_term(int n, const Spec& f, const std::vector<Grid>& epow) {
    if (n == 0) return apply_g0(f);
    // D (eta^n/n!) D A_{n-1} f = -d_x((eta^n/n!) d_x A_{n-1} f)
    Spec out = dx(times(epow[static_cast<std::size_t>(n)], grid(dx(apply_a(n - 1, f)))));
    for (auto& v : out) v = -v;
    for (int l = 0; l < n; ++l) {
      const Spec inner = times(epow[static_cast<std::size_t>(n - l)], grid(apply_a(n - l, f)));
      const Spec t = g_term(l, inner, epow);
      for (std::size_t k = 0; k < out.size(); ++k) out[k] -= t[k];
    }
    return out;
  }

  PhysicalParams p_;
  int m_;
  int kmax_ = 0;
  RealFft fft_;
  std::vector<double> g0_;
};

void check_state(const WaveState& s) {
  require(s.eta.size() == s.psi.size(), "eta and psi must share a grid");
  const int m = s.size();
  require(m >= 16 && is_power_of_two(m), "grid size M must be a power of two >= 16");
  for (std::size_t i = 0; i < s.eta.size(); ++i) {
    if (!std::isfinite(s.eta[i]) || !std::isfinite(s.psi[i])) fail(ErrorCode::Numeric, "state has non-finite samples");
  }
}

double grid_integral(const Grid& f) { return kTwoPi / double(f.size()) * std::accumulate(f.begin(), f.end(), 0.0); }

struct Fields {
  Spec eta, psi;
};

class Stepper {
 public:
  Stepper(const PhysicalParams& p, const SolverConfig& cfg) : sp_(p, cfg.m, cfg.dealias), cfg_(cfg) {
    const int h = sp_.half();
    omega_.resize(static_cast<std::size_t>(h));
    for (int k = 1; k <= sp_.kmax(); ++k) omega_[static_cast<std::size_t>(k)] = omega(p, k);
    filter_.assign(static_cast<std::size_t>(h), 1.0);
    if (cfg.filter_strength > 0) {
      for (int k = 0; k < h; ++k)
        filter_[static_cast<std::size_t>(k)] = std::exp(-36.0 * std::pow(double(k) / sp_.kmax(), cfg.filter_strength));
    }
  }

  Spectral& sp() { return sp_; }

  Fields load(const WaveState& s) {
    Fields f{sp_.spec(s.eta), sp_.spec(s.psi)};
    f.eta[0] = f.psi[0] = 0.0;
    return f;
  }

  WaveState unload(const Fields& f) { return {sp_.grid(f.eta), sp_.grid(f.psi)}; }

  // Exact linear propagator over tau: rotation of the complex variable by e^{i Omega tau}.
  Fields propagate(const Fields& f, double tau) const {
    Fields out = f;
    for (int k = 1; k <= sp_.kmax(); ++k) {
      const auto i = static_cast<std::size_t>(k);
      const double w = omega_[i], g = sp_.g0(k);
      const double c = std::cos(w * tau), s = std::sin(w * tau);
      out.eta[i] = f.eta[i] * c + (g / w) * f.psi[i] * s;
      out.psi[i] = f.psi[i] * c - (w / g) * f.eta[i] * s;
    }
    return out;
  }

  Fields nonlinear(const Fields& f) {
    const Grid eta = sp_.grid(f.eta);
    const Spec g_hi = sp_.dno(eta, f.psi, cfg_.dno_order, 1);
    Spec g_full = sp_.apply_g0(f.psi);
    for (std::size_t k = 0; k < g_full.size(); ++k) g_full[k] += g_hi[k];
    const Grid gpsi = sp_.grid(g_full);
    const Grid ex = sp_.grid(sp_.dx(f.eta));
    const Grid px = sp_.grid(sp_.dx(f.psi));
    Grid quad(eta.size()), cap(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const double e2 = ex[i] * ex[i];
      const double r = std::sqrt(1.0 + e2);
      const double a = ex[i] * px[i] + gpsi[i];
      quad[i] = -0.5 * px[i] * px[i] + 0.5 * a * a / (1.0 + e2);
      // eta_x (1/sqrt(1+eta_x^2) - 1) without cancellation
      cap[i] = -ex[i] * e2 / (r * (1.0 + r));
    }
    Fields out{g_hi, sp_.spec(quad)};
    const Spec capx = sp_.dx(sp_.spec(cap));
    const double kappa = sp_.params().kappa;
    for (std::size_t k = 0; k < out.psi.size(); ++k) out.psi[k] += kappa * capx[k];
    out.eta[0] = out.psi[0] = 0.0;
    return out;
  }

  Fields step(const Fields& u, double h) {
    auto axpy = [](const Fields& a, double s, const Fields& b) {
      Fields out = a;
      for (std::size_t k = 0; k < a.eta.size(); ++k) {
        out.eta[k] += s * b.eta[k];
        out.psi[k] += s * b.psi[k];
      }
      return out;
    };
    const Fields k1 = nonlinear(u);
    const Fields k2 = nonlinear(propagate(axpy(u, 0.5 * h, k1), 0.5 * h));
    const Fields u_half = propagate(u, 0.5 * h);
    const Fields k3 = nonlinear(axpy(u_half, 0.5 * h, k2));
    const Fields k4 = nonlinear(axpy(propagate(u, h), h, propagate(k3, 0.5 * h)));
    Fields mid = k2;
    for (std::size_t k = 0; k < mid.eta.size(); ++k) {
      mid.eta[k] += k3.eta[k];
      mid.psi[k] += k3.psi[k];
    }
    Fields out = propagate(u, h);
    out = axpy(out, h / 6.0, propagate(k1, h));
    out = axpy(out, h / 3.0, propagate(mid, 0.5 * h));
    out = axpy(out, h / 6.0, k4);
    if (cfg_.filter_strength > 0) {
      for (std::size_t k = 0; k < out.eta.size(); ++k) {
        out.eta[k] *= filter_[k];
        out.psi[k] *= filter_[k];
      }
    }
    return out;
  }

  WwRecord record(const Fields& f, double t) {
    const WaveState s = unload(f);
    WwRecord r;
    r.t = t;
    r.h = energy(s);
    r.mass = kTwoPi * f.eta[0].real();
    r.momentum = momentum(s);
    r.mixed_norm = sp_.mixed_norm(f.eta, f.psi, cfg_.sobolev_s);
    const double root = std::sqrt(kTwoPi);
    for (int k = 1; k <= cfg_.mode_count; ++k) {
      if (k > sp_.kmax()) {
        r.mode_amp.push_back(0.0);
        continue;
      }
      const double lam = lambda_mult(sp_.params(), k);
      const auto i = static_cast<std::size_t>(k);
      const cplx u = (lam * root * f.psi[i] + kI * root * f.eta[i] / lam) / std::numbers::sqrt2;
      r.mode_amp.push_back(std::abs(u));
    }
    return r;
  }

  double energy(const WaveState& s) {
    const Spec psi = sp_.spec(s.psi);
    Spec gp = sp_.dno(s.eta, psi, cfg_.dno_order, 0);
    const Grid gpsi = sp_.grid(gp);
    const Grid ex = sp_.grid(sp_.dx(sp_.spec(s.eta)));
    const Grid psig = sp_.grid(psi);
    Grid dens(s.eta.size());
    const auto& p = sp_.params();
    for (std::size_t i = 0; i < dens.size(); ++i) {
      const double e2 = ex[i] * ex[i];
      dens[i] = 0.5 * psig[i] * gpsi[i] + 0.5 * p.g * s.eta[i] * s.eta[i] + p.kappa * e2 / (std::sqrt(1.0 + e2) + 1.0);
    }
    return grid_integral(dens);
  }

 private:
  Spectral sp_;
  SolverConfig cfg_;
  std::vector<double> omega_;
  std::vector<double> filter_;
};

}  // namespace

void SolverConfig::validate() const {
  require(m >= 16 && is_power_of_two(m), "grid size M must be a power of two >= 16");
  require(dno_order >= 1 && dno_order <= 4, "dno_order must be in {1,2,3,4}");
  require(dt > 0.0 && std::isfinite(dt), "dt must be > 0");
  require(t_final > 0.0 && std::isfinite(t_final), "T must be > 0");
  require(dealias > 0.0 && dealias <= 1.0, "dealias fraction must lie in (0, 1]");
  require(filter_strength >= 0.0, "filter_strength must be >= 0");
  require(record_every >= 1, "record_every must be >= 1");
  require(norm_ceiling > 0.0, "norm_ceiling must be > 0");
  require(mode_count >= 1, "mode_count must be >= 1");
}

std::vector<double> dno_apply(const PhysicalParams& p, std::span<const double> eta, std::span<const double> psi,
                              int order, double dealias) {
  require(order >= 0 && order <= 4, "DNO order must be in 0..4");
  require(eta.size() == psi.size(), "eta and psi must share a grid");
  Spectral sp(p, static_cast<int>(eta.size()), dealias);
  Spec c = sp.spec(psi);
  c[0] = 0.0;
  return sp.grid(sp.dno(Grid(eta.begin(), eta.end()), c, order));
}

StateRates rhs(const PhysicalParams& p, const WaveState& s, int dno_order, double dealias) {
  check_state(s);
  SolverConfig cfg;
  cfg.m = s.size();
  cfg.dno_order = dno_order;
  cfg.dealias = dealias;
  Stepper st(p, cfg);
  const Fields f = st.load(s);
  Fields n = st.nonlinear(f);
  for (int k = 1; k <= st.sp().kmax(); ++k) {
    const auto i = static_cast<std::size_t>(k);
    n.eta[i] += st.sp().g0(k) * f.psi[i];
    n.psi[i] -= (p.g + p.kappa * k * k) * f.eta[i];
  }
  return {st.sp().grid(n.eta), st.sp().grid(n.psi)};
}

double hamiltonian(const PhysicalParams& p, const WaveState& s, int dno_order, double dealias) {
  check_state(s);
  SolverConfig cfg;
  cfg.m = s.size();
  cfg.dno_order = dno_order;
  cfg.dealias = dealias;
  Stepper st(p, cfg);
  return st.energy(s);
}

double hamiltonian_quadratic(const PhysicalParams& p, const WaveState& s) {
  check_state(s);
  const auto eta = field_of(s.eta), psi = field_of(s.psi);
  double acc = 0.0;
  for (int n = 1; n <= eta.max_mode(); ++n) {
    const double w = 0.5 * (std::norm(eta[n]) + std::norm(eta[-n]));
    const double v = 0.5 * (std::norm(psi[n]) + std::norm(psi[-n]));
    acc += g0_mult(p, n) * v + (p.g + p.kappa * n * n) * w;
  }
  return acc;
}

double momentum(const WaveState& s) {
  const auto eta = field_of(s.eta), psi = field_of(s.psi);
  // int eta_x psi = sum_n (i n) eta^(n) conj(psi^(n))
  cplx acc{};
  for (int n = -eta.max_mode(); n <= eta.max_mode(); ++n) acc += kI * double(n) * eta[n] * std::conj(psi[n]);
  return acc.real();
}

double mass(const WaveState& s) { return grid_integral(s.eta); }

VelocityTrace velocity_trace(const PhysicalParams& p, std::span<const double> eta, std::span<const double> psi,
                             int dno_order, double dealias) {
  require(eta.size() == psi.size(), "eta and psi must share a grid");
  Spectral sp(p, static_cast<int>(eta.size()), dealias);
  const Grid eg(eta.begin(), eta.end());
  Spec pc = sp.spec(psi);
  pc[0] = 0.0;
  const Grid gpsi = sp.grid(sp.dno(eg, pc, dno_order));
  const Grid ex = sp.grid(sp.dx(sp.spec(eta)));
  const Grid px = sp.grid(sp.dx(pc));
  Grid b(eta.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = (gpsi[i] + ex[i] * px[i]) / (1.0 + ex[i] * ex[i]);
  VelocityTrace out;
  out.b = sp.grid(sp.spec(b));
  out.v.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out.v[i] = px[i] - ex[i] * out.b[i];
  return out;
}

FourierField field_of(std::span<const double> samples) {
  return fourier_from_grid(samples, static_cast<int>(samples.size()) / 2 - 1);
}

double state_mixed_norm(const WaveState& s, double sobolev_s) {
  return mixed_norm(field_of(s.eta), field_of(s.psi), sobolev_s);
}

WaveState seed_from_complex(const PhysicalParams& p, int m, const FourierField& u, double eps, double sobolev_s) {
  require(eps > 0.0, "epsilon must be > 0");
  require(m >= 16 && is_power_of_two(m), "grid size M must be a power of two >= 16");
  require(3 * u.max_mode() < m, "seed modes exceed M/3");
  auto [eta, psi] = from_complex(p, u);
  const double n = mixed_norm(eta, psi, sobolev_s);
  require(n > 0.0, "seed must be nonzero");
  const double scale = eps / n;
  WaveState s{real_grid_from_fourier(eta, m), real_grid_from_fourier(psi, m)};
  for (auto& v : s.eta) v *= scale;
  for (auto& v : s.psi) v *= scale;
  return s;
}

WaveState seed_state(const PhysicalParams& p, int m, double eps, double sobolev_s) {
  // eta^(j) for eta = cos x + cos(2x)/2, j = 1, 2; u_j = i sqrt(2) eta^(j) / Lambda(j).
  const double root = std::sqrt(kTwoPi);
  FourierField u(2);
  const double amp[3] = {0.0, 0.5 * root, 0.25 * root};
  for (int j = 1; j <= 2; ++j) u[j] = kI * std::numbers::sqrt2 * amp[j] / lambda_mult(p, j);
  return seed_from_complex(p, m, u, eps, sobolev_s);
}

double spectral_tail(const WaveState& s) {
  double total = 0.0, tail = 0.0;
  const int m = s.size();
  for (const auto* f : {&s.eta, &s.psi}) {
    const auto c = field_of(*f);
    for (int n = 1; n <= c.max_mode(); ++n) {
      const double e = std::norm(c[n]) + std::norm(c[-n]);
      total += e;
      if (3 * n >= m) tail += e;
    }
  }
  return total > 0 ? std::sqrt(tail / total) : 0.0;
}

std::string to_string(WwStatus s) {
  switch (s) {
    case WwStatus::Completed: return "completed";
    case WwStatus::Stopped: return "stopped";
    case WwStatus::BlowUp: return "blow-up";
    case WwStatus::NotFinite: return "not-finite";
  }
  return "unknown";
}

WwResult integrate_ww(const PhysicalParams& p, const WaveState& s0, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  check_state(s0);
  require(s0.size() == cfg.m, "state grid does not match M");
  const double eta_mean = grid_integral(s0.eta) / kTwoPi;
  double scale = 0.0;
  for (double v : s0.eta) scale = std::max(scale, std::abs(v));
  if (std::abs(eta_mean) > 1e-12 * std::max(1.0, scale)) fail(ErrorCode::Domain, "initial eta must have zero mean");

  Stepper st(p, cfg);
  Fields f = st.load(s0);
  const auto n_steps = static_cast<std::int64_t>(std::ceil(cfg.t_final / cfg.dt - 1e-9));
  const double h = cfg.t_final / double(n_steps);

  WwResult res;
  auto push = [&](const Fields& fl, double t) {
    res.records.push_back(st.record(fl, t));
    if (cfg.keep_states) res.states.push_back(st.unload(fl));
  };
  push(f, 0.0);
  for (std::int64_t n = 1; n <= n_steps; ++n) {
    f = st.step(f, h);
    const double t = double(n) * h;
    res.steps = n;
    res.t_end = t;
    const double nrm = st.sp().mixed_norm(f.eta, f.psi, cfg.sobolev_s);
    if (!std::isfinite(nrm)) {
      res.status = WwStatus::NotFinite;
      res.message = "non-finite state at t=" + std::to_string(t);
      res.records.push_back(WwRecord{t, std::nan(""), std::nan(""), std::nan(""), nrm, {}});
      return res;
    }
    if (nrm > cfg.norm_ceiling) {
      res.status = WwStatus::BlowUp;
      res.message = "mixed norm exceeded ceiling at t=" + std::to_string(t);
      push(f, t);
      return res;
    }
    if (nrm > cfg.stop_norm) {
      res.status = WwStatus::Stopped;
      push(f, t);
      return res;
    }
    if (n % cfg.record_every == 0 || n == n_steps) push(f, t);
  }
  return res;
}

void write_ww_csv(const std::string& path, const WwResult& r, int mode_count) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot open " + path + " for writing");
  os << std::setprecision(17);
  os << "t,H,mass,momentum,mixed_norm";
  for (int k = 1; k <= mode_count; ++k) os << ",mode_amp_" << k;
  os << '\n';
  for (const auto& rec : r.records) {
    os << rec.t << ',' << rec.h << ',' << rec.mass << ',' << rec.momentum << ',' << rec.mixed_norm;
    for (int k = 0; k < mode_count; ++k) {
      os << ',';
      if (static_cast<std::size_t>(k) < rec.mode_amp.size()) os << rec.mode_amp[static_cast<std::size_t>(k)];
    }
    os << '\n';
  }
  if (!os) fail(ErrorCode::Io, "write failed for " + path);
}

void LifespanConfig::validate() const {
  require(!epsilons.empty(), "lifespan needs at least one epsilon");
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    require(epsilons[i] > 0.0, "epsilons must be > 0");
    if (i > 0) require(epsilons[i] < epsilons[i - 1], "epsilons must be strictly descending");
  }
  require(threshold_factor > 1.0, "threshold_factor must be > 1");
  require(t_max_scale > 0.0, "t_max_scale must be > 0");
  require(threads >= 1, "threads must be >= 1");
  solver.validate();
}

LifespanFit fit_lifespan(std::span<const double> eps, std::span<const double> t_eps) {
  require(eps.size() == t_eps.size() && eps.size() >= 2, "fit needs at least two points");
  const auto n = eps.size();
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    require(eps[i] > 0 && t_eps[i] > 0, "fit needs positive data");
    x[i] = std::log(1.0 / eps[i]);
    y[i] = std::log(t_eps[i]);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  require(sxx > 0, "fit needs distinct epsilons");
  LifespanFit f;
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  if (n > 2) {
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = y[i] - f.intercept - f.exponent * x[i];
      ssr += e * e;
    }
    f.std_error = std::sqrt(ssr / double(n - 2) / sxx);
    const boost::math::students_t dist(double(n - 2));
    const double tq = boost::math::quantile(boost::math::complement(dist, 0.025));
    f.ci_low = f.exponent - tq * f.std_error;
    f.ci_high = f.exponent + tq * f.std_error;
  } else {
    f.std_error = std::numeric_limits<double>::infinity();
    f.ci_low = -std::numeric_limits<double>::infinity();
    f.ci_high = std::numeric_limits<double>::infinity();
  }
  return f;
}

LifespanResult lifespan_experiment(const PhysicalParams& p, const LifespanConfig& cfg) {
  p.validate();
  cfg.validate();
  LifespanResult res;
  res.rows.resize(cfg.epsilons.size());
  std::vector<std::exception_ptr> errors(cfg.epsilons.size());

  auto run_one = [&](std::size_t i) {
    try {
      const double eps = cfg.epsilons[i];
      const WaveState s0 = seed_state(p, cfg.solver.m, eps, cfg.sobolev_s);
      const double tail = spectral_tail(s0);
      if (tail > 1e-12) {
        fail(ErrorCode::Domain, "seed under-resolved at M=" + std::to_string(cfg.solver.m) +
                                    " (tail fraction " + std::to_string(tail) + ")");
      }
      SolverConfig sc = cfg.solver;
      sc.sobolev_s = cfg.sobolev_s;
      sc.t_final = cfg.t_max_scale / (eps * eps);
      sc.stop_norm = cfg.threshold_factor * eps;
      sc.keep_states = false;
      const WwResult r = integrate_ww(p, s0, sc);
      LifespanRow& row = res.rows[i];
      row.eps = eps;
      row.t_max = sc.t_final;
      row.t_eps = r.t_end;
      row.censored = r.status == WwStatus::Completed;
      row.final_norm = r.records.back().mixed_norm;
      row.steps = r.steps;
      row.status = r.status;
      if (r.status == WwStatus::NotFinite) fail(ErrorCode::Numeric, "eps=" + std::to_string(eps) + ": " + r.message);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const std::size_t n = cfg.epsilons.size();
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(cfg.threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) run_one(i);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < n; i += workers) run_one(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  res.all_censored = std::all_of(res.rows.begin(), res.rows.end(), [](const LifespanRow& r) { return r.censored; });
  if (n >= 2) {
    std::vector<double> e, t;
    for (const auto& r : res.rows) {
      e.push_back(r.eps);
      t.push_back(r.t_eps);
    }
    res.fit = fit_lifespan(e, t);
  }
  return res;
}

void write_lifespan_csv(const std::string& path, const LifespanResult& r) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot open " + path + " for writing");
  os << std::setprecision(17) << "epsilon,T_eps,censored_flag\n";
  for (const auto& row : r.rows) os << row.eps << ',' << row.t_eps << ',' << (row.censored ? 1 : 0) << '\n';
  if (!os) fail(ErrorCode::Io, "write failed for " + path);
}

}  // namespace wwbnf
