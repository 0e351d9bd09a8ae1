#pragma once

// Full solver against the resonant normal-form flow for the same two-mode data.
// Both sides are read through z = (Lambda eta + i Lambda^{-1} omega)/sqrt 2 with
// omega the good unknown, and compared on |z_j| for 0 < |j| <= 2.

#include <array>
#include <numbers>
#include <vector>

#include "resonant_flow.hpp"
#include "waterwaves.hpp"

namespace wwbnf {

struct CorrespondenceConfig {
  double eps = 0.02;
  double sobolev_s = 0.0;  ///< norm used to size the data
  int m = 64;
  double dt = 0.01;
  double t_final = 0.0;  ///< <= 0 selects 1/eps
  int record_every = 50;
  int dno_order = 3;
  /// u_1 = i, u_2 = i ratio e^{i phase} before rescaling
  double ratio = 0.5;
  double phase = std::numbers::pi / 2;

  void validate() const;
};

struct CorrespondenceResult {
  std::vector<double> t;
  std::vector<std::array<double, 4>> full;  ///< |z_j|, j = -2, -1, 1, 2
  std::vector<std::array<double, 4>> bnf;
  double max_rel_error = 0.0;    ///< max_t |full - bnf| / |z(0)|, Euclidean over the four moduli
  double max_exchange = 0.0;     ///< max_t |bnf - bnf(0)| / |z(0)|
  double frozen_rel_error = 0.0; ///< same metric with the amplitudes frozen at t = 0
  WwStatus status = WwStatus::Completed;
};

CorrespondenceResult run_correspondence(const PhysicalParams& p, const CorrespondenceConfig& cfg);

}  // namespace wwbnf
