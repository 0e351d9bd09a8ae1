#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "birkhoff.hpp"
#include "doctest.h"
#include "error.hpp"
#include "fft.hpp"
#include "reference_values.hpp"

using namespace wwbnf;

namespace {

const PhysicalParams kGeneric(1.0, 1.0, Depth::infinite());
const PhysicalParams kWilton(1.0, 0.5, Depth::infinite());

SpectralState random_state(std::mt19937_64& rng, int n, double amp = 1.0) {
  std::normal_distribution<double> nd;
  SpectralState z(n);
  for (int j = -n; j <= n; ++j)
    if (j != 0) z[j] = amp * cplx(nd(rng), nd(rng));
  return z;
}

ModeTriple mt(int s1, std::int64_t j1, int s2, std::int64_t j2, int s3, std::int64_t j3) {
  return {SignedMode(s1, j1), SignedMode(s2, j2), SignedMode(s3, j3)};
}

// A random Hamiltonian on momentum keys with |j| <= n and the reality pairing.
CubicHamiltonian random_hamiltonian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> nd;
  CubicHamiltonian h(kGeneric, kDefaultResonanceTol, n);
  for (const auto& m : momentum_triples(n)) h.set_with_partner(m, cplx(nd(rng), nd(rng)));
  return h;
}

}  // namespace

TEST_CASE("h3 coefficient closed form") {
  const auto m = mt(1, 1, -1, 2, 1, 1);
  const cplx c = h3_coefficient(kWilton, m);
  CHECK(std::abs(std::abs(c) - ref::h3_modulus_wilton_p1_m2_p1) < 1e-15);
  CHECK(c.real() == 0.0);
  CHECK(h3_coefficient(kWilton, mt(1, 3, -1, 1, 1, -2)) == h3_coefficient(kWilton, mt(1, -2, -1, 1, 1, 3)));
  const auto a = mt(1, 5, -1, 2, -1, 3);
  CHECK(std::abs(h3_coefficient(kGeneric, flipped(a)) - std::conj(h3_coefficient(kGeneric, a))) < 1e-15);
  CHECK_THROWS_AS(h3_coefficient(kGeneric, mt(1, 1, 1, 1, 1, 1)), Error);
}

TEST_CASE("multiplicity") {
  CHECK(multiplicity(mt(1, 2, -1, 1, -1, 1)) == 3);
  CHECK(multiplicity(mt(1, 3, -1, 1, -1, 2)) == 6);
  CHECK(multiplicity(mt(1, 1, 1, 1, -1, 2)) == 3);
}

TEST_CASE("coefficient oracle: real-variable expansion equals the closed form") {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& p : {kWilton, kGeneric, PhysicalParams(9.81, 0.07, Depth::finite(2.0)),
                        PhysicalParams(0.0, 1.0, Depth::finite(0.5))}) {
    const auto oracle = expand_h3_from_real(p, 20);
    const auto table = full_cubic_hamiltonian(p, 20);
    const auto cmp = compare_tables(oracle, table);
    CHECK(cmp.missing == 0);
    CHECK(cmp.compared == table.size());
    CHECK(cmp.max_abs_diff < 1e-12);
    CHECK(oracle.reality_defect() < 1e-12);
    for (const auto& t : oracle.terms()) CHECK(momentum_conserved(t.key));
  }
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 30.0);
}

TEST_CASE("resonant Hamiltonian") {
  CHECK(assemble_resonant_hamiltonian(kGeneric, 64).empty());
  const auto h = assemble_resonant_hamiltonian(kWilton, 64);
  CHECK(h.size() == 4);
  CHECK(h.support() == 2);
  CHECK(h.reality_defect() == 0.0);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto z = random_state(rng, 2);
    CHECK(std::abs(h.evaluate(z).imag()) < 1e-13);
  }
}

TEST_CASE("quadratic Hamiltonian") {
  SpectralState z(4);
  CHECK(hamiltonian_h2(kGeneric, z) == 0.0);
  z[1] = cplx(0.3, -0.4);
  CHECK(hamiltonian_h2(kGeneric, z) == doctest::Approx(omega(kGeneric, 1.0) * 0.25));

  // Parseval against int Omega(D) z . conj(z) on a grid
  std::mt19937_64 rng(8);
  const auto w = random_state(rng, 12);
  const int m = 64;
  const auto x = grid_from_fourier(w, m);
  ComplexFft fft(m);
  std::vector<cplx> spec(m), back(m);
  fft.forward(x, spec);
  for (int k = 0; k < m; ++k) spec[k] *= omega(kGeneric, k < m / 2 ? k : k - m) / double(m);
  fft.backward(spec, back);
  cplx acc{};
  for (int i = 0; i < m; ++i) acc += back[i] * std::conj(x[i]);
  acc *= 2 * std::numbers::pi / m;
  CHECK(std::abs(acc.real() - hamiltonian_h2(kGeneric, w)) < 1e-12 * hamiltonian_h2(kGeneric, w));
}

TEST_CASE("gradient") {
  SUBCASE("empty Hamiltonian") {
    std::mt19937_64 rng(9);
    const auto g = CubicHamiltonian(kGeneric, 1e-9, 4).gradient_zbar(random_state(rng, 4));
    CHECK(sobolev_norm(g, 0.0) == 0.0);
  }
  SUBCASE("single monomial c z1 z1 conj(z2)") {
    CubicHamiltonian h(kGeneric, 1e-9, 2);
    const cplx c(0.3, 0.7);
    h.set_with_partner(mt(1, 1, 1, 1, -1, 2), c);
    SpectralState z(2);
    z[1] = cplx(0.2, -0.1);
    z[2] = cplx(-0.5, 0.4);
    const auto g = h.gradient_zbar(z);
    // d/dconj(z2) of mult*c*z1^2 conj(z2) is 3c z1^2; the partner gives 3 conj(c) conj(z1)^2 z2 at target 1... via d/dconj(z1)
    CHECK(std::abs(g[2] - 3.0 * c * z[1] * z[1]) < 1e-15);
    CHECK(std::abs(g[1] - 2.0 * 3.0 * std::conj(c) * std::conj(z[1]) * z[2]) < 1e-15);
  }
  SUBCASE("finite differences of the real Hamiltonian") {
    std::mt19937_64 rng(10);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const auto h = random_hamiltonian(rng, 4);
      const auto z = random_state(rng, 4, 0.5);
      const auto g = h.gradient_zbar(z);
      const double step = 1e-6;
      for (int k = -4; k <= 4; ++k) {
        if (k == 0) continue;
        auto hp = z, hm = z;
        hp[k] += step;
        hm[k] -= step;
        const double dx = (h.evaluate(hp).real() - h.evaluate(hm).real()) / (2 * step);
        hp = z;
        hm = z;
        hp[k] += cplx(0, step);
        hm[k] -= cplx(0, step);
        const double dy = (h.evaluate(hp).real() - h.evaluate(hm).real()) / (2 * step);
        // d/dconj(z) = (d/dx + i d/dy)/2
        const cplx fd = 0.5 * cplx(dx, dy);
        const double err = std::abs(fd - g[k]);
        CHECK(err < 1e-7);
        worst = std::max(worst, err / std::max(1.0, std::abs(g[k])));
      }
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("Poisson brackets") {
  const auto h2 = Polynomial::quadratic(kWilton, 4);
  CHECK(poisson_bracket(h2, h2).max_abs_coeff() == 0.0);

  const auto hres = assemble_resonant_hamiltonian(kWilton, 512);
  const auto br = poisson_bracket(Polynomial::from_cubic(hres), Polynomial::quadratic(kWilton, 2));
  CHECK(br.size() > 0);
  CHECK(br.max_abs_coeff() < 1e-13);

  SUBCASE("single monomial against |z1|^2") {
    // {F, N} with F = c z2 conj(z1)^2, N = z1 conj(z1): i (dN/dz1 dF/dconj z1 - dN/dconj z1 dF/dz1)
    // = i conj(z1) * 2 c z2 conj(z1) = 2 i c z2 conj(z1)^2
    Polynomial f, n;
    const cplx c(0.4, -1.1);
    f.add({SignedMode(1, 2), SignedMode(-1, 1), SignedMode(-1, 1)}, c);
    n.add({SignedMode(1, 1), SignedMode(-1, 1)}, 1.0);
    const auto b = poisson_bracket(f, n);
    REQUIRE(b.size() == 1);
    const auto& [mono, coeff] = b.terms().begin()->second;
    CHECK(std::abs(coeff - cplx(0, 2) * c) < 1e-15);
    // finite-difference cross-check on a random state
    std::mt19937_64 rng(11);
    const auto z = random_state(rng, 2);
    CHECK(std::abs(b.evaluate(z) - cplx(0, 2) * c * z[2] * std::conj(z[1]) * std::conj(z[1])) < 1e-14);
  }
  SUBCASE("bracket with H2 multiplies by -i phase") {
    std::mt19937_64 rng(12);
    const auto h = random_hamiltonian(rng, 3);
    const auto b = poisson_bracket(Polynomial::from_cubic(h), Polynomial::quadratic(kGeneric, 3));
    for (const auto& t : h.terms()) {
      Polynomial one;
      one.add({t.key[0], t.key[1], t.key[2]}, 1.0);
      const auto key_terms = one.terms().begin()->first;
      const auto it = b.terms().find(key_terms);
      REQUIRE(it != b.terms().end());
      const cplx expect = cplx(0, -1) * phase_of(kGeneric, t.key) * double(t.mult) * t.coeff;
      CHECK(std::abs(it->second.second - expect) < 1e-12);
    }
  }
}

TEST_CASE("Pi_ker") {
  std::mt19937_64 rng(13);
  const auto xg = hamiltonian_vector_field(full_cubic_hamiltonian(kGeneric, 12));
  CHECK(pi_ker(xg, kGeneric, 1e-9).size() == 0);

  const auto full = full_cubic_hamiltonian(kWilton, 12);
  const auto x = hamiltonian_vector_field(full);
  const auto once = pi_ker(x, kWilton, 1e-9);
  const auto twice = pi_ker(once, kWilton, 1e-9);
  CHECK(once.distance(twice) == 0.0);
  CHECK(once.size() > 0);
  const auto bnf = hamiltonian_vector_field(assemble_resonant_hamiltonian(kWilton, 12));
  CHECK(once.distance(bnf) < 1e-15);

  // vector field components agree with i sigma dH/dz^{-sigma}
  const auto z = random_state(rng, 2);
  const auto hres = assemble_resonant_hamiltonian(kWilton, 12);
  const auto grad = hres.gradient_zbar(z);
  SpectralState xz(2);
  for (const auto& e : bnf.entries()) {
    if (e.target.sigma > 0) xz[e.target.j] += e.coeff * mode_value(z, e.a) * mode_value(z, e.b);
  }
  for (int j = -2; j <= 2; ++j)
    if (j != 0) CHECK(std::abs(xz[j] - cplx(0, 1) * grad[j]) < 1e-14);
}

TEST_CASE("homological equation") {
  SUBCASE("zero input") {
    HomologicalCoefficients r;
    r[{1, 1, 1, 1, 1, 2}] = 0.0;
    const auto s = solve_homological(kGeneric, r);
    CHECK(s.g.at({1, 1, 1, 1, 1, 2}) == cplx{});
    CHECK(s.residual == 0.0);
  }
  SUBCASE("single non-resonant key") {
    const HomologicalKey k{1, 1, 1, 1, 1, 2};
    HomologicalCoefficients r;
    r[k] = 1.0;
    const auto s = solve_homological(kGeneric, r);
    const double d = homological_divisor(kGeneric, k);
    CHECK(std::abs(s.g.at(k) - 1.0 / cplx(0, d)) < 1e-15);
    CHECK(s.residual < 1e-15);
    CHECK(d == doctest::Approx(omega(kGeneric, 2.0) - 2 * omega(kGeneric, 1.0)));
  }
  SUBCASE("random mixed instances at Wilton parameters") {
    std::mt19937_64 rng(14);
    std::normal_distribution<double> nd;
    std::uniform_int_distribution<int> sign(0, 1), idx(1, 30);
    for (int inst = 0; inst < 50; ++inst) {
      HomologicalCoefficients r;
      r[{1, 1, 1, 1, 1, 2}] = cplx(nd(rng), nd(rng));     // (2; 1, 1) resonant
      r[{-1, -1, -1, 1, 1, 2}] = cplx(nd(rng), nd(rng));  // its flip
      while (r.size() < 200) {
        HomologicalKey k;
        k.sigma = sign(rng) ? 1 : -1;
        k.sigma_p = sign(rng) ? 1 : -1;
        k.eps = sign(rng) ? 1 : -1;
        k.n = idx(rng) * (sign(rng) ? 1 : -1);
        k.k = idx(rng) * (sign(rng) ? 1 : -1);
        const std::int64_t sj = k.eps * k.n + k.sigma_p * k.k;
        if (sj == 0) continue;
        k.j = k.sigma * sj;
        r[k] = cplx(nd(rng), nd(rng));
      }
      const auto s = solve_homological(kWilton, r);
      CHECK(s.residual < 1e-12);
      CHECK(s.resonant_keys >= 2);
      for (const auto& [k, v] : s.g) {
        if (s.r_res.at(k) != cplx{}) CHECK(v == cplx{});
      }
    }
  }
  SUBCASE("tolerance inconsistency is an error") {
    HomologicalCoefficients r;
    r[{1, 1, 1, 1, 1, 2}] = 1.0;
    CHECK_THROWS_AS(solve_homological(kWilton, r, 1e-9, {}), Error);
  }
  SUBCASE("momentum violation is an error") {
    HomologicalCoefficients r;
    r[{1, 1, 1, 1, 1, 3}] = 1.0;
    CHECK_THROWS_AS(solve_homological(kGeneric, r), Error);
  }
}

TEST_CASE("table round trip") {
  const auto h = full_cubic_hamiltonian(PhysicalParams(9.81, 0.07, Depth::finite(2.0)), 6);
  std::stringstream ss;
  write_table(ss, h);
  const auto back = read_table(ss);
  const auto cmp = compare_tables(h, back);
  CHECK(cmp.missing == 0);
  CHECK(cmp.max_abs_diff == 0.0);
  CHECK(back.params() == h.params());
  CHECK(back.max_j() == 6);

  std::stringstream bad("# g 1\n# kappa 1\n# depth inf\n1 2 -1 1 -1 2 0.5 0.1 3\n");
  CHECK_THROWS_AS(read_table(bad), Error);
  std::stringstream bad_mult("# g 1\n# kappa 1\n# depth inf\n1 2 -1 1 -1 1 0.5 0.1 6\n");
  CHECK_THROWS_AS(read_table(bad_mult), Error);
}
