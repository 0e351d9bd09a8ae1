#pragma once

// Truncated normal-form dynamics
//   d/dt z_L = i Omega(D) z_L + i dH/dconj(z)(z_L),   d/dt z_H = i Omega(D) z_H.
// Integration runs on w = e^{-i Omega t} z, where the linear part drops out and
// each cubic monomial carries the explicit factor e^{i phase t}.

#include <cstdint>
#include <string>
#include <vector>

#include "birkhoff.hpp"

namespace wwbnf {

enum class FlowScheme { ImplicitMidpoint, Rk4RotatingFrame };

FlowScheme parse_scheme(const std::string& s);
std::string to_string(FlowScheme s);

struct FlowConfig {
  double dt = 0.01;
  double t_final = 1.0;
  FlowScheme scheme = FlowScheme::ImplicitMidpoint;
  int record_every = 100;
  double sobolev_s = 8.0;
  double low_cutoff = 0.0;  ///< <= 0 selects resonance_cutoff(params)
  bool backward = false;    ///< integrate from t_start down to t_start - t_final
  double t_start = 0.0;
  double fixed_point_tol = 1e-13;
  int max_iterations = 50;

  void validate() const;
};

std::pair<SpectralState, SpectralState> split_low_high(const SpectralState& z, double cutoff);

struct Trajectory {
  PhysicalParams params;
  double cutoff = 0.0;
  std::vector<double> t;
  std::vector<SpectralState> frame;  ///< interaction-frame coefficients w = e^{-i Omega t} z
  int max_iterations_used = 0;

  std::size_t size() const { return t.size(); }
  /// z at record i.
  SpectralState state(std::size_t i) const;
  /// |z_j| at record i (equal to |w_j|).
  double modulus(std::size_t i, std::int64_t j) const;
};

/// e^{i Omega t} w, mode by mode.
SpectralState rotate(const PhysicalParams& p, const SpectralState& w, double t);

Trajectory integrate_resonant(const PhysicalParams& p, const CubicHamiltonian& h_res, const SpectralState& z0,
                              const FlowConfig& cfg);

struct FlowDiagnostics {
  double t = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double momentum = 0.0;
  double sobolev_norm = 0.0;
  double equiv_norm = 0.0;
};

std::vector<FlowDiagnostics> flow_diagnostics(const Trajectory& traj, const CubicHamiltonian& h_res, double s);

/// sqrt(max a_j / min a_j) with a_j = |j|^{2s} / Omega(j) over 0 < |j| <= n_max;
/// bounds ||z_L(t)||_{H^s} / ||z_L(0)||_{H^s} whenever H2 is conserved.
double norm_equivalence_constant(const PhysicalParams& p, std::int64_t n_max, double s);

/// Header `t,H2,H3,momentum,sobolev_s_norm,equiv_norm`, optionally followed by
/// re_j,im_j columns of z for 0 < |j| <= dump_modes.
void write_flow_csv(const std::string& path, const Trajectory& traj, const std::vector<FlowDiagnostics>& diag,
                    int dump_modes = 0);

}  // namespace wwbnf
