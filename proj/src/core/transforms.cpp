#include "transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "fft.hpp"
#include "waterwaves.hpp"

namespace wwbnf {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

}  // namespace

FourierField::FourierField(int max_mode) : n_(max_mode), c_(static_cast<std::size_t>(2 * max_mode + 1)) {
  require(max_mode >= 0, "max_mode must be >= 0");
}

double FourierField::reality_defect() const {
  double worst = 0.0;
  for (int n = 0; n <= n_; ++n) worst = std::max(worst, std::abs((*this)[n] - std::conj((*this)[-n])));
  return worst;
}

FourierField FourierField::resized(int max_mode) const {
  FourierField out(max_mode);
  for (int n = -std::min(n_, max_mode); n <= std::min(n_, max_mode); ++n) out[n] = (*this)[n];
  return out;
}

FourierField fourier_from_grid(std::span<const cplx> samples, int max_mode) {
  const int m = static_cast<int>(samples.size());
  require(2 * max_mode < m, "grid too coarse for the requested modes");
  ComplexFft fft(m);
  std::vector<cplx> spec(samples.size());
  fft.forward(samples, spec);
  FourierField u(max_mode);
  const double scale = kSqrt2Pi / m;
  for (int n = -max_mode; n <= max_mode; ++n) u[n] = scale * spec[static_cast<std::size_t>((n + m) % m)];
  return u;
}

FourierField fourier_from_grid(std::span<const double> samples, int max_mode) {
  std::vector<cplx> c(samples.begin(), samples.end());
  return fourier_from_grid(std::span<const cplx>(c), max_mode);
}

std::vector<cplx> grid_from_fourier(const FourierField& u, int m) {
  require(2 * u.max_mode() < m, "grid too coarse for the field");
  std::vector<cplx> spec(static_cast<std::size_t>(m)), out(static_cast<std::size_t>(m));
  for (int n = -u.max_mode(); n <= u.max_mode(); ++n) spec[static_cast<std::size_t>((n + m) % m)] = u[n] / kSqrt2Pi;
  ComplexFft fft(m);
  fft.backward(spec, out);
  return out;
}

std::vector<double> real_grid_from_fourier(const FourierField& u, int m) {
  const auto c = grid_from_fourier(u, m);
  std::vector<double> out(c.size());
  std::transform(c.begin(), c.end(), out.begin(), [](cplx v) { return v.real(); });
  return out;
}

double sobolev_norm(const FourierField& u, double s) {
  double acc = 0.0;
  for (int n = 1; n <= u.max_mode(); ++n) {
    const double w = std::pow(static_cast<double>(n), 2.0 * s);
    acc += w * (std::norm(u[n]) + std::norm(u[-n]));
  }
  return std::sqrt(acc);
}

double mixed_norm(const FourierField& eta, const FourierField& psi, double s) {
  return sobolev_norm(eta, s + 0.25) + sobolev_norm(psi, s - 0.25);
}

FourierField to_complex(const PhysicalParams& p, const FourierField& eta, const FourierField& psi) {
  const int n_max = std::max(eta.max_mode(), psi.max_mode());
  FourierField u(n_max);
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) continue;
    const double lam = lambda_mult(p, n);
    u[n] = kInvSqrt2 * (lam * psi.at(n) + cplx(0.0, 1.0) * eta.at(n) / lam);
  }
  return u;
}

std::pair<FourierField, FourierField> from_complex(const PhysicalParams& p, const FourierField& u) {
  const int n_max = u.max_mode();
  FourierField eta(n_max), psi(n_max);
  for (int n = -n_max; n <= n_max; ++n) {
    if (n == 0) continue;
    const double lam = lambda_mult(p, n);
    const cplx ubar = std::conj(u[-n]);  // Fourier coefficient of conj(u) at n
    eta[n] = cplx(0.0, -kInvSqrt2) * lam * (u[n] - ubar);
    psi[n] = kInvSqrt2 / lam * (u[n] + ubar);
  }
  return {std::move(eta), std::move(psi)};
}

FourierField translate(const FourierField& u, double theta) {
  FourierField out(u.max_mode());
  for (int n = -u.max_mode(); n <= u.max_mode(); ++n) out[n] = std::polar(1.0, n * theta) * u[n];
  return out;
}

void BonyWeylConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::InvalidArgument, "Bony-Weyl delta must lie in (0, 1)");
}

double cutoff_bump(double r) {
  if (r <= 0.5) return 1.0;
  if (r >= 1.0) return 0.0;
  const double t = (r - 0.5) / 0.5;
  return 1.0 - t * t * (3.0 - 2.0 * t);
}

double cutoff_chi(double xi_prime, double xi, const BonyWeylConfig& cfg) {
  return cutoff_bump(std::abs(xi_prime) / (cfg.delta * std::sqrt(1.0 + xi * xi)));
}

FourierField bony_weyl_apply(const FourierField& a, const FourierField& u, const BonyWeylConfig& cfg,
                             int out_max_mode) {
  cfg.validate();
  const int n_out = out_max_mode >= 0 ? out_max_mode : a.max_mode() + u.max_mode();
  FourierField out(n_out);
  for (int k = -n_out; k <= n_out; ++k) {
    cplx acc{};
    const int j_lo = std::max(-u.max_mode(), k - a.max_mode());
    const int j_hi = std::min(u.max_mode(), k + a.max_mode());
    for (int j = j_lo; j <= j_hi; ++j) {
      const double chi = cutoff_chi(k - j, 0.5 * (k + j), cfg);
      if (chi != 0.0) acc += chi * a[k - j] * u[j];
    }
    out[k] = acc / kSqrt2Pi;
  }
  return out;
}

FourierField bony_weyl_apply(std::span<const double> a_samples, const FourierField& u, const BonyWeylConfig& cfg,
                             int out_max_mode) {
  const int m = static_cast<int>(a_samples.size());
  const auto a = fourier_from_grid(a_samples, (m - 1) / 2);
  return bony_weyl_apply(a, u, cfg, out_max_mode);
}

FourierField good_unknown(const PhysicalParams& p, std::span<const double> eta, std::span<const double> psi,
                          const BonyWeylConfig& cfg, int dno_order) {
  require(eta.size() == psi.size(), "eta and psi must share a grid");
  const int m = static_cast<int>(eta.size());
  const auto trace = velocity_trace(p, eta, psi, dno_order);
  const int n_max = m / 2 - 1;
  const auto eta_hat = fourier_from_grid(eta, n_max);
  auto omega_hat = fourier_from_grid(psi, n_max);
  const auto corr = bony_weyl_apply(fourier_from_grid(std::span<const double>(trace.b), n_max), eta_hat, cfg, n_max);
  for (int n = -n_max; n <= n_max; ++n) omega_hat[n] -= corr[n];
  omega_hat[0] = 0.0;
  return omega_hat;
}

}  // namespace wwbnf
