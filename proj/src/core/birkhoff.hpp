#pragma once

// Cubic Hamiltonians in the complex variables z_j, conj(z_j).
//
// A table stores one entry per key sorted by canonical_less, holding the
// symmetrized coefficient c and the number of distinct orderings of the key
// (6, 3 or 1), so that
//   H(z) = sum over ordered (a, b, c) h_abc z^a z^b z^c = sum_keys mult * c * z^a z^b z^c.
// Both a key and its sign-flipped partner are stored.

#include <array>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "resonance.hpp"
#include "spectra.hpp"
#include "transforms.hpp"

namespace wwbnf {

/// z_j for 0 < |j| <= max_mode(); the entry at 0 is ignored.
using SpectralState = FourierField;

/// z^sigma_j: z_j for sigma = +1, conj(z_j) for sigma = -1; zero outside the state.
cplx mode_value(const SpectralState& z, const SignedMode& m);

/// Closed-form coefficient with eta in slot 2:
/// (i sigma2 / (8 sqrt(pi))) (sigma1 sigma3 j1 j3 + G_j1 G_j3) Lambda(j2) / (Lambda(j1) Lambda(j3)).
cplx h3_coefficient(const PhysicalParams& p, const ModeTriple& m);

/// Average of h3_coefficient over the six orderings of m.
cplx symmetrized_h3(const PhysicalParams& p, const ModeTriple& m);

/// Number of distinct orderings of the three signed modes.
int multiplicity(const ModeTriple& m);

struct CubicTerm {
  ModeTriple key;  ///< sorted by canonical_less
  cplx coeff;      ///< symmetrized coefficient
  int mult = 1;
};

class CubicHamiltonian {
 public:
  CubicHamiltonian() = default;
  CubicHamiltonian(PhysicalParams p, double tol, std::int64_t max_j);

  const PhysicalParams& params() const noexcept { return params_; }
  double tol() const noexcept { return tol_; }
  std::int64_t max_j() const noexcept { return max_j_; }
  bool symmetrized() const noexcept { return true; }

  /// Inserts or replaces the symmetrized coefficient of a momentum-conserving key.
  void set(const ModeTriple& m, cplx coeff);
  /// Inserts m and its sign flip with conjugate coefficients.
  void set_with_partner(const ModeTriple& m, cplx coeff);
  const CubicTerm* find(const ModeTriple& m) const;

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  std::vector<CubicTerm> terms() const;
  /// Largest |j| appearing in any key (0 when empty).
  std::int64_t support() const;

  /// Largest |c(flip key) - conj(c(key))| over stored keys; missing partners count as |c|.
  double reality_defect() const;

  cplx evaluate(const SpectralState& z) const;
  /// k-th entry d H / d conj(z_k), Wirtinger convention.
  SpectralState gradient_zbar(const SpectralState& z) const;

 private:
  using Key = std::array<std::int64_t, 6>;
  static Key key_of(const ModeTriple& m);
  PhysicalParams params_;
  double tol_ = kDefaultResonanceTol;
  std::int64_t max_j_ = 0;
  std::map<Key, CubicTerm> terms_;
};

/// H^(3) restricted to the resonant triples from enumerate_resonances.
CubicHamiltonian assemble_resonant_hamiltonian(const PhysicalParams& p, std::int64_t max_j,
                                               double tol = kDefaultResonanceTol, int threads = 1);

/// H^(3) on every momentum-conserving key with max|j| <= max_j.
CubicHamiltonian full_cubic_hamiltonian(const PhysicalParams& p, std::int64_t max_j);

/// Independent construction of the same table: eta and psi are written in the
/// complex variables, H^(3) = 1/2 int eta (psi_x^2 - (G(0) psi)^2) dx is
/// integrated on a grid for each ordered triple of variables, and the result is
/// symmetrized.
CubicHamiltonian expand_h3_from_real(const PhysicalParams& p, std::int64_t max_j);

/// sum_j Omega(j) |z_j|^2.
double hamiltonian_h2(const PhysicalParams& p, const SpectralState& z);

/// Polynomial in the independent variables z^sigma_j. A monomial is the sorted
/// list of its variables; coefficients are per monomial (not symmetrized).
class Polynomial {
 public:
  using Monomial = std::vector<SignedMode>;

  void add(Monomial m, cplx c);
  const std::map<std::vector<std::int64_t>, std::pair<Monomial, cplx>>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  double max_abs_coeff() const;
  cplx evaluate(const SpectralState& z) const;
  /// d/dz^v of the polynomial.
  Polynomial derivative(const SignedMode& v) const;
  std::vector<SignedMode> variables() const;

  static Polynomial from_cubic(const CubicHamiltonian& h);
  /// H2 = sum_{0<|j|<=max_j} Omega(j) z_j conj(z_j).
  static Polynomial quadratic(const PhysicalParams& p, std::int64_t max_j);

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(cplx s) const;

 private:
  static std::vector<std::int64_t> key_of(const Monomial& m);
  std::map<std::vector<std::int64_t>, std::pair<Monomial, cplx>> terms_;
};

/// {F, G} = i sum_j (dG/dz_j dF/dconj(z_j) - dG/dconj(z_j) dF/dz_j).
Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g);

/// Quadratic vector field: coefficient of z^a z^b d/dz^target, keyed by
/// (target, a, b) with a, b sorted.
struct VectorFieldEntry {
  SignedMode target;
  SignedMode a;
  SignedMode b;
  cplx coeff;
};

class QuadraticVectorField {
 public:
  void add(const SignedMode& target, SignedMode a, SignedMode b, cplx c);
  std::vector<VectorFieldEntry> entries() const;
  std::size_t size() const { return entries_.size(); }
  /// Largest coefficient difference, counting entries missing on one side.
  double distance(const QuadraticVectorField& other) const;

 private:
  using Key = std::array<std::int64_t, 6>;
  std::map<Key, VectorFieldEntry> entries_;
};

/// X_F = sum_k sum_sigma i sigma dF/dz^{-sigma}_k d/dz^sigma_k for a cubic F.
QuadraticVectorField hamiltonian_vector_field(const CubicHamiltonian& h);

/// Keeps the entries with |-sigma Omega(j) + sigma_a Omega(j_a) + sigma_b Omega(j_b)| <= tol.
QuadraticVectorField pi_ker(const QuadraticVectorField& x, const PhysicalParams& p, double tol);

/// Index (sigma, sigma', eps, n, k, j) with eps n + sigma' k = sigma j.
struct HomologicalKey {
  int sigma = 1;
  int sigma_p = 1;
  int eps = 1;
  std::int64_t n = 1;
  std::int64_t k = 1;
  std::int64_t j = 1;

  auto operator<=>(const HomologicalKey&) const = default;
};

using HomologicalCoefficients = std::map<HomologicalKey, cplx>;

/// sigma Omega(j) - sigma' Omega(k) - eps Omega(n).
double homological_divisor(const PhysicalParams& p, const HomologicalKey& key);
/// The triple (sigma, j), (-sigma', k), (-eps, n) whose phase is the divisor.
ModeTriple homological_triple(const HomologicalKey& key);

struct HomologicalSolution {
  HomologicalCoefficients g;
  HomologicalCoefficients r_res;  ///< r kept on resonant keys
  double residual = 0.0;          ///< max |-i g d + r - r_res|
  std::size_t resonant_keys = 0;
};

/// g = r / (i d) off the resonant set, 0 on it. The resonant set comes from
/// enumerate_resonances at the same tolerance; a key with |d| <= tol that is
/// not in that set is a tolerance inconsistency and raises an error.
HomologicalSolution solve_homological(const PhysicalParams& p, const HomologicalCoefficients& r,
                                      double tol = kDefaultResonanceTol);
/// Same, with the resonant set given explicitly (canonical triples).
HomologicalSolution solve_homological(const PhysicalParams& p, const HomologicalCoefficients& r, double tol,
                                      const std::vector<Triple>& resonant);

/// Text table: '#' header lines, then `sigma1 j1 sigma2 j2 sigma3 j3 re im multiplicity`.
void write_table(std::ostream& os, const CubicHamiltonian& h);
void write_table(const std::string& path, const CubicHamiltonian& h);
CubicHamiltonian read_table(std::istream& is);
CubicHamiltonian read_table(const std::string& path);

struct TableComparison {
  double max_abs_diff = 0.0;
  double max_rel_diff = 0.0;
  std::size_t compared = 0;
  std::size_t missing = 0;  ///< keys present in one table only
  bool has_worst = false;
  ModeTriple worst_key{};
};

/// Entrywise comparison over the union of keys; multiplicity mismatches count as missing.
TableComparison compare_tables(const CubicHamiltonian& a, const CubicHamiltonian& b);

}  // namespace wwbnf
