#pragma once

// Values produced by tests/oracles/spectra_oracle.py (mpmath, 40 digits).

namespace ref {

inline constexpr double omega_g1_k1_h05_xi3 = 5.210992958097908727903094;
inline constexpr double lambda_g981_k007_h2_j5 = 0.8109667384364587325022106;
inline constexpr double tanh_1 = 0.7615941559557648881194583;
inline constexpr double h3_modulus_wilton_p1_m2_p1 = 0.156094602848888975838658;
inline constexpr double sqrt10_minus_2sqrt2 = 0.3338505354221892343955161;
inline constexpr double remainder_g1_k1_n100 = 0.04999875006249609402341699;
inline constexpr double wilton_kappa_g1_h2_j1 = 0.4488198415649042303211835;
inline constexpr double wilton_kappa_g981_h05_j3 = 0.4095139381122827372492316;

}  // namespace ref
