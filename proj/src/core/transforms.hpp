#pragma once

// Fourier conventions on the 2*pi-periodic line:
//   u(x) = sum_n u^(n) e^{inx} / sqrt(2 pi),   u^(n) = (2 pi)^{-1/2} int u e^{-inx} dx.
// Homogeneous fields carry u^(0) = 0.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "spectra.hpp"

namespace wwbnf {

using cplx = std::complex<double>;

/// Coefficients u^(n) for |n| <= max_mode(), stored densely.
class FourierField {
 public:
  FourierField() = default;
  explicit FourierField(int max_mode);

  int max_mode() const noexcept { return n_; }
  bool contains(std::int64_t n) const noexcept { return n >= -n_ && n <= n_; }

  cplx& operator[](std::int64_t n) { return c_[static_cast<std::size_t>(n + n_)]; }
  const cplx& operator[](std::int64_t n) const { return c_[static_cast<std::size_t>(n + n_)]; }
  /// Zero outside the stored range.
  cplx at(std::int64_t n) const { return contains(n) ? (*this)[n] : cplx{}; }

  std::span<cplx> raw() noexcept { return c_; }
  std::span<const cplx> raw() const noexcept { return c_; }

  /// Largest |u^(n) - conj(u^(-n))|; zero for real-valued fields.
  double reality_defect() const;
  FourierField resized(int max_mode) const;

 private:
  int n_ = 0;
  std::vector<cplx> c_{cplx{}};
};

/// Coefficients of real samples on x_m = 2 pi m / M, truncated at |n| <= max_mode < M/2.
FourierField fourier_from_grid(std::span<const double> samples, int max_mode);
FourierField fourier_from_grid(std::span<const cplx> samples, int max_mode);

/// Samples of the field on an M-point grid (M > 2 max_mode).
std::vector<cplx> grid_from_fourier(const FourierField& u, int m);
/// Real part of the samples; intended for fields with u^(-n) = conj(u^(n)).
std::vector<double> real_grid_from_fourier(const FourierField& u, int m);

/// (sum_{n != 0} |n|^{2s} |u^(n)|^2)^{1/2}.
double sobolev_norm(const FourierField& u, double s);

/// ||eta||_{H^{s+1/4}} + ||psi||_{H^{s-1/4}} (homogeneous weights; eta has zero mean).
double mixed_norm(const FourierField& eta, const FourierField& psi, double s);

/// u = (Lambda psi + i Lambda^{-1} eta) / sqrt(2), mode by mode; u^(0) = 0.
FourierField to_complex(const PhysicalParams& p, const FourierField& eta, const FourierField& psi);

/// eta = -i Lambda (u - conj u)/sqrt(2), psi = Lambda^{-1} (u + conj u)/sqrt(2).
std::pair<FourierField, FourierField> from_complex(const PhysicalParams& p, const FourierField& u);

/// tau_theta: u(x) -> u(x + theta), i.e. u^(n) -> e^{i n theta} u^(n).
FourierField translate(const FourierField& u, double theta);

struct BonyWeylConfig {
  double delta = 0.3;  ///< cutoff slope, 0 < delta < 1
  void validate() const;
};

/// Cubic smoothstep bump: 1 on [0, 1/2], 0 on [1, inf), C^1 in between.
double cutoff_bump(double r);

/// chi(xi', xi) = bump(|xi'| / (delta <xi>)), <xi> = (1 + xi^2)^{1/2}.
double cutoff_chi(double xi_prime, double xi, const BonyWeylConfig& cfg);

/// (Op^BW(a) u)^(k) = (2 pi)^{-1/2} sum_j chi(k - j, (k + j)/2) a^(k - j) u^(j)
/// for an x-dependent order-zero symbol a. The result carries modes up to
/// a.max_mode() + u.max_mode() unless out_max_mode >= 0 is given.
FourierField bony_weyl_apply(const FourierField& a, const FourierField& u, const BonyWeylConfig& cfg,
                             int out_max_mode = -1);
FourierField bony_weyl_apply(std::span<const double> a_samples, const FourierField& u, const BonyWeylConfig& cfg,
                             int out_max_mode = -1);

/// omega = psi - Op^BW(B(eta, psi)) eta with B from the velocity trace of the
/// full water-wave state; eta and psi are real grid samples (M points).
FourierField good_unknown(const PhysicalParams& p, std::span<const double> eta, std::span<const double> psi,
                          const BonyWeylConfig& cfg, int dno_order = 3);

}  // namespace wwbnf
