#pragma once

// Pseudo-spectral solver for
//   eta_t = G(eta) psi
//   psi_t = -g eta - psi_x^2/2 + (eta_x psi_x + G(eta) psi)^2 / (2 (1 + eta_x^2))
//           + kappa d_x(eta_x / sqrt(1 + eta_x^2))
// on a uniform grid of M points over [0, 2 pi).
//
// The Dirichlet-Neumann operator is the truncated Taylor series sum_{n<=N} G_n(eta)
// built by the recursion (D = -i d_x, G_0 = D tanh(hD)):
//   A_m = D^m for even m, D^{m-1} G_0 for odd m,
//   G_n psi = D (eta^n/n!) D A_{n-1} psi - sum_{l<n} G_l (eta^{n-l}/(n-l)!) A_{n-l} psi.
// It follows from expanding the harmonic extension sum_k a_k cosh(k(y+h))/cosh(kh) e^{ikx}
// at y = eta and matching powers of eta. G_1 = D eta D - G_0 eta G_0.

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "spectra.hpp"
#include "transforms.hpp"

namespace wwbnf {

struct WaveState {
  std::vector<double> eta;
  std::vector<double> psi;

  int size() const noexcept { return static_cast<int>(eta.size()); }
};

struct SolverConfig {
  int m = 256;                 ///< grid size, power of two >= 16
  int dno_order = 3;           ///< 1..4
  double dt = 0.01;
  double t_final = 10.0;
  double dealias = 2.0 / 3.0;  ///< keep |k| <= dealias * M / 2
  double filter_strength = 0;  ///< exponent p of exp(-36 (k/kmax)^p); 0 disables
  int record_every = 10;
  double sobolev_s = 8.0;
  double norm_ceiling = 1e3;   ///< blow-up guard on the mixed norm
  double stop_norm = std::numeric_limits<double>::infinity();  ///< stopping rule on the mixed norm
  int mode_count = 4;          ///< K in the mode amplitude columns
  bool keep_states = false;

  void validate() const;
};

/// sum_{n<=order} G_n(eta) psi on the grid; order in 0..4.
std::vector<double> dno_apply(const PhysicalParams& p, std::span<const double> eta, std::span<const double> psi,
                              int order, double dealias = 2.0 / 3.0);

struct StateRates {
  std::vector<double> eta_t;
  std::vector<double> psi_t;
};

/// Full right-hand side (linear part included), both outputs projected to zero mean.
StateRates rhs(const PhysicalParams& p, const WaveState& s, int dno_order = 3, double dealias = 2.0 / 3.0);

/// H - 2 pi kappa = 1/2 int psi G psi + g/2 int eta^2 + kappa int (sqrt(1+eta_x^2) - 1).
double hamiltonian(const PhysicalParams& p, const WaveState& s, int dno_order = 3, double dealias = 2.0 / 3.0);
/// 1/2 int psi G(0) psi + g/2 int eta^2 + kappa/2 int eta_x^2.
double hamiltonian_quadratic(const PhysicalParams& p, const WaveState& s);
/// int eta_x psi dx.
double momentum(const WaveState& s);
/// int eta dx.
double mass(const WaveState& s);

struct VelocityTrace {
  std::vector<double> b;
  std::vector<double> v;
};

/// B = (G psi + eta_x psi_x) / (1 + eta_x^2), V = psi_x - eta_x B.
VelocityTrace velocity_trace(const PhysicalParams& p, std::span<const double> eta, std::span<const double> psi,
                             int dno_order = 3, double dealias = 2.0 / 3.0);

/// Fourier coefficients (1/sqrt(2 pi) convention) of a grid field up to |n| < M/2.
FourierField field_of(std::span<const double> samples);
double state_mixed_norm(const WaveState& s, double sobolev_s);

/// Traveling seed with eta ~ cos x + cos(2x)/2, built from a complex seed on
/// modes 1 and 2 and rescaled so the mixed norm equals eps.
WaveState seed_state(const PhysicalParams& p, int m, double eps, double sobolev_s);
/// Real state whose complex variable is a multiple of u, scaled to mixed norm eps.
WaveState seed_from_complex(const PhysicalParams& p, int m, const FourierField& u, double eps, double sobolev_s);
/// Fraction of the spectral norm carried by |k| >= M/3.
double spectral_tail(const WaveState& s);

struct WwRecord {
  double t = 0.0;
  double h = 0.0;
  double mass = 0.0;
  double momentum = 0.0;
  double mixed_norm = 0.0;
  std::vector<double> mode_amp;  ///< |u_k|, k = 1..K
};

enum class WwStatus { Completed, Stopped, BlowUp, NotFinite };

std::string to_string(WwStatus s);

struct WwResult {
  std::vector<WwRecord> records;
  std::vector<WaveState> states;  ///< filled when keep_states
  WwStatus status = WwStatus::Completed;
  double t_end = 0.0;
  std::int64_t steps = 0;
  std::string message;
};

/// Integrating-factor RK4: the linear part is propagated exactly mode by mode,
/// the nonlinear remainder by classical RK4.
WwResult integrate_ww(const PhysicalParams& p, const WaveState& s0, const SolverConfig& cfg);

void write_ww_csv(const std::string& path, const WwResult& r, int mode_count);

struct LifespanConfig {
  std::vector<double> epsilons{0.08, 0.04, 0.02};
  double sobolev_s = 8.0;
  double threshold_factor = 2.0;
  double t_max_scale = 1.0;  ///< T_max(eps) = t_max_scale / eps^2
  SolverConfig solver;
  int threads = 1;

  void validate() const;
};

struct LifespanRow {
  double eps = 0.0;
  double t_eps = 0.0;
  double t_max = 0.0;
  bool censored = false;
  double final_norm = 0.0;
  std::int64_t steps = 0;
  WwStatus status = WwStatus::Completed;
};

struct LifespanFit {
  double exponent = 0.0;  ///< slope of log T against log(1/eps)
  double intercept = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;   ///< 95% interval, Student t with n-2 dof
  double ci_high = 0.0;
};

struct LifespanResult {
  std::vector<LifespanRow> rows;
  LifespanFit fit;
  bool all_censored = false;
};

LifespanFit fit_lifespan(std::span<const double> eps, std::span<const double> t_eps);
LifespanResult lifespan_experiment(const PhysicalParams& p, const LifespanConfig& cfg);
void write_lifespan_csv(const std::string& path, const LifespanResult& r);

}  // namespace wwbnf
