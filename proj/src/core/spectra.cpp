#include "spectra.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "error.hpp"

namespace wwbnf {

Depth Depth::finite(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    fail(ErrorCode::InvalidArgument, "depth must be positive and finite (use Depth::infinite())");
  }
  return Depth(false, h);
}

std::string Depth::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << h_;
  return os.str();
}

PhysicalParams::PhysicalParams(double g_, double kappa_, Depth depth_)
    : g(g_), kappa(kappa_), depth(depth_) {
  validate();
}

void PhysicalParams::validate() const {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    fail(ErrorCode::InvalidArgument, "surface tension kappa must be > 0");
  }
  if (!(g >= 0.0) || !std::isfinite(g)) {
    fail(ErrorCode::InvalidArgument, "gravity g must be >= 0");
  }
  if (!depth.is_infinite() && !(depth.value() > 0.0)) {
    fail(ErrorCode::InvalidArgument, "depth must be > 0");
  }
}

double stable_tanh(double x) {
  if (x < 0.0) return -stable_tanh(-x);
  // e^{2x} overflows to inf for large x, and 2/inf = 0 gives exactly 1.
  return 1.0 - 2.0 / (std::exp(2.0 * x) + 1.0);
}

double depth_factor(const PhysicalParams& p, double xi) {
  if (p.depth.is_infinite()) return 1.0;
  return stable_tanh(p.depth.value() * std::abs(xi));
}

double omega(const PhysicalParams& p, double xi) {
  const double a = std::abs(xi);
  return std::sqrt((p.kappa * a * a * a + p.g * a) * depth_factor(p, a));
}

double lambda_mult(const PhysicalParams& p, std::int64_t j) {
  if (j == 0) fail(ErrorCode::Domain, "Lambda is undefined at zero frequency");
  const double a = std::abs(static_cast<double>(j));
  return std::pow(a * depth_factor(p, a), 0.25) * std::pow(p.g + p.kappa * a * a, -0.25);
}

double g0_symbol(const PhysicalParams& p, double xi) {
  const double a = std::abs(xi);
  return a * depth_factor(p, a);
}

double g0_mult(const PhysicalParams& p, std::int64_t j) {
  return g0_symbol(p, static_cast<double>(j));
}

namespace {

// r(n) = (Omega^2 - kappa n^3) / (Omega + sqrt(kappa) n^{3/2}), with
// Omega^2 - kappa n^3 = g n T - kappa n^3 (1 - T) and 1 - T = 2/(e^{2hn}+1).
double remainder_at(const PhysicalParams& p, double n) {
  const double t = depth_factor(p, n);
  const double one_minus_t = p.depth.is_infinite() ? 0.0 : 2.0 / (std::exp(2.0 * p.depth.value() * n) + 1.0);
  const double num = p.g * n * t - p.kappa * n * n * n * one_minus_t;
  return num / (omega(p, n) + std::sqrt(p.kappa) * std::pow(n, 1.5));
}

}  // namespace

double certified_remainder_constant(const PhysicalParams& p) {
  double worst = 0.0;
  for (std::int64_t n = 1; n <= kRemainderCertificationRange; ++n) {
    const double nd = static_cast<double>(n);
    worst = std::max(worst, std::abs(remainder_at(p, nd)) * std::sqrt(nd));
  }
  double tail = p.g / (2.0 * std::sqrt(p.kappa));
  if (!p.depth.is_infinite()) tail += std::sqrt(p.kappa) * 2.0 * std::exp(-2.0 * p.depth.value());
  return worst + tail;
}

OmegaRemainder omega_remainder(const PhysicalParams& p, std::int64_t n) {
  if (n == 0) fail(ErrorCode::Domain, "remainder expansion needs n != 0");
  const double nd = std::abs(static_cast<double>(n));
  return {remainder_at(p, nd), certified_remainder_constant(p)};
}

}  // namespace wwbnf
