#pragma once

// Three-wave resonances sigma1 Omega(j1) + sigma2 Omega(j2) + sigma3 Omega(j3) = 0
// on the momentum lattice sigma1 j1 + sigma2 j2 + sigma3 j3 = 0.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "spectra.hpp"

namespace wwbnf {

/// Shared resonance tolerance: enumeration, Pi_ker and the homological
/// solver all use this value unless told otherwise.
inline constexpr double kDefaultResonanceTol = 1e-9;

/// (sigma, j): sigma = +1 stands for z_j, sigma = -1 for conj(z_j).
struct SignedMode {
  int sigma = 1;
  std::int64_t j = 1;

  SignedMode() = default;
  SignedMode(int s, std::int64_t jj);

  SignedMode flipped() const { return SignedMode(-sigma, j); }
  /// Spatial frequency carried by the monomial factor.
  std::int64_t frequency() const { return sigma * j; }

  bool operator==(const SignedMode&) const = default;
};

/// Canonical ordering of modes inside a key: sigma=+ before sigma=-, then
/// |j| descending, then j descending.
bool canonical_less(const SignedMode& a, const SignedMode& b);

using ModeTriple = std::array<SignedMode, 3>;

struct Triple {
  ModeTriple modes;
  double phase = 0.0;
};

/// Sorts the three modes into canonical order (no sign flip).
ModeTriple sorted_modes(ModeTriple m);

/// Global sign flip of all sigma_i.
ModeTriple flipped(const ModeTriple& m);

/// Orbit representative under permutation and global sign flip: the flip is
/// chosen so the number of plus signs is odd, giving (+,+,+) or (+,-,-), and
/// the modes are then sorted canonically.
ModeTriple canonical_triple(const ModeTriple& m);

bool momentum_conserved(const ModeTriple& m);

/// sigma1 Omega(j1) + sigma2 Omega(j2) + sigma3 Omega(j3). Momentum is not required.
double phase_of(const PhysicalParams& p, const ModeTriple& m);

/// All canonical momentum-conserving triples with max|j_i| <= max_j and
/// |phase| <= tol, sorted lexicographically by (sigma_i, j_i).
std::vector<Triple> enumerate_resonances(const PhysicalParams& p, std::int64_t max_j, double tol,
                                         int threads = 1);

struct GapResult {
  double gap = 0.0;
  Triple witness;
};

/// Every canonical momentum-conserving triple with max|j_i| <= max_j, no phase filter.
std::vector<ModeTriple> momentum_triples(std::int64_t max_j);

/// Smallest |phase| among momentum-conserving triples with max|j| <= max_j and
/// |phase| > exclude_tol.
GapResult min_gap(const PhysicalParams& p, std::int64_t max_j, double exclude_tol, int threads = 1);

/// The finiteness cutoff 2 (30 C)^2 / kappa built on the certified remainder
/// constant; floored at 1 so the cutoff stays positive when C = 0.
double resonance_cutoff(const PhysicalParams& p);

/// kappa > 0 making (2j; j, j) exactly resonant: Omega(2j) = 2 Omega(j).
double wilton_kappa(double g, Depth depth, std::int64_t j);

struct LemmaViolation {
  std::int64_t n2 = 0;
  std::int64_t n3 = 0;
  double value = 0.0;
  double bound = 0.0;
  char inequality = 'a';
};

struct LemmaReport {
  std::int64_t max_j = 0;
  double remainder_constant = 0.0;
  double threshold_n2n3 = 0.0;  ///< (30 C)^2 / kappa
  std::int64_t checked_a = 0;
  std::int64_t checked_b = 0;
  std::int64_t violations_a = 0;
  std::int64_t violations_b = 0;
  double worst_margin_a = 0.0;  ///< min over checks of value - bound
  double worst_margin_b = 0.0;
  std::vector<LemmaViolation> violations;  ///< first violations found, capped

  bool passed() const { return violations_a == 0 && violations_b == 0; }
};

/// (a) (n2+n3)^{3/2} - n2^{3/2} - n3^{3/2} >= sqrt(n2)/5 for 1 <= n3 <= n2 <= max_j;
/// (b) |Omega(n2+n3) - Omega(n2) - Omega(n3)| >= sqrt(n2 kappa)/10 whenever
///     n2 n3 >= (30 C)^2/kappa and n2 + n3 <= max_j.
LemmaReport verify_lemma_bounds(const PhysicalParams& p, std::int64_t max_j);

/// (n2+n3)^{3/2} - n2^{3/2} - n3^{3/2} in the cancellation-free rational form.
double superadditivity_gap(double n2, double n3);

std::string to_string(const ModeTriple& m);

}  // namespace wwbnf
