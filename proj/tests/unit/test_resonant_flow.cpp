#include <cmath>
#include <random>

#include "doctest.h"
#include "error.hpp"
#include "resonant_flow.hpp"

using namespace wwbnf;

namespace {

const PhysicalParams kGeneric(1.0, 1.0, Depth::infinite());
const PhysicalParams kWilton(1.0, 0.5, Depth::infinite());

SpectralState random_state(std::mt19937_64& rng, int n, double amp) {
  std::normal_distribution<double> nd;
  SpectralState z(n);
  for (int j = -n; j <= n; ++j)
    if (j != 0) z[j] = amp * cplx(nd(rng), nd(rng));
  return z;
}

double max_diff(const SpectralState& a, const SpectralState& b) {
  double d = 0.0;
  for (int k = -a.max_mode(); k <= a.max_mode(); ++k) d = std::max(d, std::abs(a[k] - b.at(k)));
  return d;
}

// Reference: dz/dt = i Omega z + i dH/dconj(z) in the lab frame, classical RK4.
SpectralState lab_frame_rk4(const PhysicalParams& p, const CubicHamiltonian& h, SpectralState z, double t, double dt) {
  const int n = static_cast<int>(std::llround(t / dt));
  auto f = [&](const SpectralState& x) {
    SpectralState g = h.gradient_zbar(x);
    for (int j = -x.max_mode(); j <= x.max_mode(); ++j)
      if (j != 0) g[j] = cplx(0, 1) * (omega(p, j) * x[j] + g[j]);
    return g;
  };
  auto axpy = [](const SpectralState& x, double a, const SpectralState& y) {
    SpectralState r = x;
    for (int j = -x.max_mode(); j <= x.max_mode(); ++j) r[j] += a * y[j];
    return r;
  };
  for (int i = 0; i < n; ++i) {
    const auto k1 = f(z);
    const auto k2 = f(axpy(z, dt / 2, k1));
    const auto k3 = f(axpy(z, dt / 2, k2));
    const auto k4 = f(axpy(z, dt, k3));
    for (int j = -z.max_mode(); j <= z.max_mode(); ++j) z[j] += dt / 6 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  return z;
}

double energy_drift(const CubicHamiltonian& h, const SpectralState& z0, double dt, double t_final) {
  FlowConfig cfg;
  cfg.dt = dt;
  cfg.t_final = t_final;
  cfg.record_every = 1;
  const auto traj = integrate_resonant(kWilton, h, z0, cfg);
  const auto d = flow_diagnostics(traj, h, 0.0);
  double drift = 0.0;
  for (const auto& r : d) drift = std::max(drift, std::abs(r.h2 + r.h3 - d[0].h2 - d[0].h3));
  return drift;
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(parse_scheme("implicit-midpoint") == FlowScheme::ImplicitMidpoint);
  CHECK(parse_scheme("rk4-rotating-frame") == FlowScheme::Rk4RotatingFrame);
  CHECK(to_string(FlowScheme::Rk4RotatingFrame) == "rk4-rotating-frame");
  CHECK_THROWS_AS(parse_scheme("euler"), Error);
}

TEST_CASE("low/high split") {
  std::mt19937_64 rng(1);
  const auto z = random_state(rng, 10, 1.0);
  const auto [lo, hi] = split_low_high(z, 4.0);
  for (int j = -10; j <= 10; ++j) {
    CHECK(lo[j] + hi[j] == z[j]);
    if (std::abs(j) <= 4) CHECK(hi[j] == cplx{});
    else CHECK(lo[j] == cplx{});
  }
  const auto [lo0, hi0] = split_low_high(z, 0.5);
  CHECK(sobolev_norm(lo0, 0.0) == 0.0);
}

TEST_CASE("linear flow at generic parameters is exact rotation") {
  std::mt19937_64 rng(2);
  const auto z0 = random_state(rng, 8, 0.1);
  const auto h = assemble_resonant_hamiltonian(kGeneric, 64);
  REQUIRE(h.empty());
  FlowConfig cfg;
  cfg.t_final = 3.7;
  cfg.dt = 0.1;
  const auto traj = integrate_resonant(kGeneric, h, z0, cfg);
  const auto z = traj.state(traj.size() - 1);
  for (int j = -8; j <= 8; ++j) {
    if (j == 0) continue;
    CHECK(std::abs(z[j] - std::polar(1.0, omega(kGeneric, j) * 3.7) * z0[j]) < 1e-14);
  }
}

TEST_CASE("zero data stays zero") {
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  FlowConfig cfg;
  cfg.t_final = 5.0;
  const auto traj = integrate_resonant(kWilton, h, SpectralState(4), cfg);
  for (std::size_t i = 0; i < traj.size(); ++i) CHECK(sobolev_norm(traj.frame[i], 0.0) == 0.0);
}

TEST_CASE("Wilton flow agrees with a lab-frame RK4 reference") {
  std::mt19937_64 rng(3);
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  auto z0 = random_state(rng, 2, 0.3);
  for (auto scheme : {FlowScheme::ImplicitMidpoint, FlowScheme::Rk4RotatingFrame}) {
    FlowConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 10.0;
    cfg.scheme = scheme;
    const auto traj = integrate_resonant(kWilton, h, z0, cfg);
    const auto ref = lab_frame_rk4(kWilton, h, z0, 10.0, 1e-4);
    const double tol = scheme == FlowScheme::ImplicitMidpoint ? 1e-4 : 1e-8;
    CHECK(max_diff(traj.state(traj.size() - 1), ref) < tol);
  }
  // energy transfer actually happens
  FlowConfig cfg;
  cfg.t_final = 50.0;
  cfg.record_every = 10;
  SpectralState z1(2);
  z1[1] = 0.3;
  z1[-1] = 0.3;
  const auto traj = integrate_resonant(kWilton, h, z1, cfg);
  double peak = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) peak = std::max(peak, traj.modulus(i, 2));
  CHECK(peak > 0.05);
}

TEST_CASE("conserved quantities over T=1000") {
  std::mt19937_64 rng(4);
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  const auto z0 = random_state(rng, 6, 0.02);
  FlowConfig cfg;
  cfg.dt = 0.01;
  cfg.t_final = 1000.0;
  cfg.record_every = 1000;
  const auto traj = integrate_resonant(kWilton, h, z0, cfg);
  const auto d = flow_diagnostics(traj, h, 8.0);
  const double e0 = d[0].h2 + d[0].h3;
  double dh = 0.0, dm = 0.0, d2 = 0.0;
  for (const auto& r : d) {
    dh = std::max(dh, std::abs(r.h2 + r.h3 - e0));
    dm = std::max(dm, std::abs(r.momentum - d[0].momentum));
    d2 = std::max(d2, std::abs(r.h2 - d[0].h2));
  }
  double dh3 = 0.0;
  for (const auto& r : d) dh3 = std::max(dh3, std::abs(r.h3 - d[0].h3));
  CHECK(dh / std::abs(e0) < 1e-8);
  CHECK(dm / std::abs(d[0].momentum) < 1e-8);
  CHECK(d2 / d[0].h2 < 1e-8);
  CHECK(d2 < 1e-10);
  CHECK(dh3 / std::abs(d[0].h3) < 1e-8);
  CHECK(traj.max_iterations_used <= cfg.max_iterations);
}

TEST_CASE("energy error is second order in dt") {
  SpectralState z0(2);
  z0[1] = cplx(0.4, 0.1);
  z0[-1] = cplx(0.3, -0.2);
  z0[2] = cplx(0.05, 0.0);
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  const double e1 = energy_drift(h, z0, 0.2, 20.0);
  const double e2 = energy_drift(h, z0, 0.1, 20.0);
  REQUIRE(e2 > 0.0);
  CHECK(e1 / e2 >= 3.5);
}

TEST_CASE("high modes are rotated exactly") {
  std::mt19937_64 rng(5);
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  const auto z0 = random_state(rng, 20, 0.1);
  FlowConfig cfg;
  cfg.t_final = 7.0;
  cfg.low_cutoff = 4.0;
  const auto traj = integrate_resonant(kWilton, h, z0, cfg);
  const auto& w = traj.frame.back();
  for (int j = -20; j <= 20; ++j)
    if (std::abs(j) > 2) CHECK(w[j] == z0[j]);
}

TEST_CASE("reversibility") {
  std::mt19937_64 rng(6);
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  const auto z0 = random_state(rng, 4, 0.2);
  FlowConfig fwd;
  fwd.t_final = 25.0;
  fwd.dt = 0.01;
  const auto a = integrate_resonant(kWilton, h, z0, fwd);
  FlowConfig bwd = fwd;
  bwd.backward = true;
  bwd.t_start = a.t.back();
  const auto b = integrate_resonant(kWilton, h, a.frame.back(), bwd);
  CHECK(std::abs(b.t.back()) < 1e-12);
  CHECK(max_diff(b.frame.back(), z0) < 1e-11);
}

TEST_CASE("Sobolev norm stays within the equivalence constant") {
  std::mt19937_64 rng(7);
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  SpectralState z0(2);
  z0[1] = 0.3;
  z0[-1] = cplx(0.1, 0.2);
  const double s = 8.0;
  const double c = norm_equivalence_constant(kWilton, 2, s);
  CHECK(c > 1.0);
  FlowConfig cfg;
  cfg.t_final = 200.0;
  cfg.record_every = 10;
  const auto traj = integrate_resonant(kWilton, h, z0, cfg);
  const auto d = flow_diagnostics(traj, h, s);
  for (const auto& r : d) CHECK(r.sobolev_norm <= c * d[0].sobolev_norm * (1 + 1e-12));
  CHECK(norm_equivalence_constant(kWilton, 1, s) == doctest::Approx(1.0));
}

TEST_CASE("error paths") {
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  SpectralState z0(2);
  z0[1] = 1e6;
  FlowConfig cfg;
  cfg.dt = 1.0;
  cfg.max_iterations = 3;
  try {
    (void)integrate_resonant(kWilton, h, z0, cfg);
    FAIL("expected a convergence failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoConvergence);
  }
  FlowConfig small;
  small.low_cutoff = 1.5;
  CHECK_THROWS_AS(integrate_resonant(kWilton, h, z0, small), Error);
  CHECK_THROWS_AS(integrate_resonant(kWilton, h, SpectralState(1), FlowConfig{}), Error);
  FlowConfig neg;
  neg.dt = -1.0;
  CHECK_THROWS_AS(integrate_resonant(kWilton, h, z0, neg), Error);
}
