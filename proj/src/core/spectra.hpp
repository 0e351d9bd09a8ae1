#pragma once

// Dispersion relation and the Fourier multipliers of the linearized
// gravity-capillary problem on the 2*pi-periodic line.

#include <cstdint>
#include <string>

namespace wwbnf {

/// Fluid depth: either a positive finite value or the infinite-depth marker.
/// tanh(h|xi|) is never evaluated for the infinite case; it is exactly 1.
class Depth {
 public:
  static Depth infinite() { return Depth(true, 0.0); }
  static Depth finite(double h);

  bool is_infinite() const noexcept { return infinite_; }
  /// Finite depth value; only meaningful when !is_infinite().
  double value() const noexcept { return h_; }

  std::string to_string() const;
  bool operator==(const Depth&) const = default;

 private:
  Depth(bool inf, double h) : infinite_(inf), h_(h) {}
  bool infinite_;
  double h_;
};

/// The triple (g, kappa, h). Validated on construction.
struct PhysicalParams {
  double g = 1.0;
  double kappa = 1.0;
  Depth depth = Depth::infinite();

  PhysicalParams() = default;
  PhysicalParams(double g_, double kappa_, Depth depth_);

  void validate() const;
  bool operator==(const PhysicalParams&) const = default;
};

/// tanh for x >= 0 in the form 1 - 2/(e^{2x}+1).
double stable_tanh(double x);

/// tanh(h|xi|), exactly 1 in infinite depth.
double depth_factor(const PhysicalParams& p, double xi);

/// Omega(xi) = (kappa|xi|^3 + g|xi|)^{1/2} tanh(h|xi|)^{1/2}.
double omega(const PhysicalParams& p, double xi);

/// Lambda(j) = (j tanh(hj))^{1/4} (g + kappa j^2)^{-1/4}; j = 0 is rejected.
double lambda_mult(const PhysicalParams& p, std::int64_t j);

/// G_j = j tanh(hj) (even in j), the symbol of G(0) = D tanh(hD).
double g0_mult(const PhysicalParams& p, std::int64_t j);

/// Same symbol on a real frequency; used by grid operators.
double g0_symbol(const PhysicalParams& p, double xi);

struct OmegaRemainder {
  double remainder;       ///< Omega(n) - sqrt(kappa)|n|^{3/2}
  double bound_constant;  ///< certified C with |r(n)| sqrt|n| <= C for all |n| >= 1
};

/// Number of integers swept to certify the remainder constant.
inline constexpr std::int64_t kRemainderCertificationRange = 10000;

OmegaRemainder omega_remainder(const PhysicalParams& p, std::int64_t n);

/// max_{1<=n<=10^4} |r(n)| sqrt(n), plus the analytic tail bound
/// g/(2 sqrt(kappa)) + sqrt(kappa) 2 e^{-2h} for n beyond the sweep.
double certified_remainder_constant(const PhysicalParams& p);

}  // namespace wwbnf
