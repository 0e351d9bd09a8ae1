#include <chrono>
#include <cmath>
#include <set>
#include <tuple>

#include "doctest.h"
#include "error.hpp"
#include "reference_values.hpp"
#include "resonance.hpp"

using namespace wwbnf;

namespace {

const PhysicalParams kGeneric(1.0, 1.0, Depth::infinite());
const PhysicalParams kWilton(1.0, 0.5, Depth::infinite());

using Key = std::tuple<int, std::int64_t, int, std::int64_t, int, std::int64_t>;

Key key(const ModeTriple& m) { return {m[0].sigma, m[0].j, m[1].sigma, m[1].j, m[2].sigma, m[2].j}; }

// All sign patterns and ordered (j1, j2); j3 from momentum. Canonicalized afterwards.
std::set<Key> brute_resonances(const PhysicalParams& p, std::int64_t max_j, double tol) {
  std::set<Key> out;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int s3 : {1, -1})
        for (std::int64_t j1 = -max_j; j1 <= max_j; ++j1)
          for (std::int64_t j2 = -max_j; j2 <= max_j; ++j2) {
            if (j1 == 0 || j2 == 0) continue;
            const std::int64_t f3 = -(s1 * j1 + s2 * j2);  // s3 j3 = f3
            const std::int64_t j3 = s3 * f3;
            if (j3 == 0 || std::abs(j3) > max_j) continue;
            const ModeTriple m{SignedMode(s1, j1), SignedMode(s2, j2), SignedMode(s3, j3)};
            if (std::abs(phase_of(p, m)) <= tol) out.insert(key(canonical_triple(m)));
          }
  return out;
}

std::set<Key> as_set(const std::vector<Triple>& v) {
  std::set<Key> s;
  for (const auto& t : v) s.insert(key(t.modes));
  return s;
}

}  // namespace

TEST_CASE("phase values") {
  const ModeTriple plus{SignedMode(1, 1), SignedMode(1, 1), SignedMode(1, 1)};
  CHECK(phase_of(kGeneric, plus) == doctest::Approx(3.0 * omega(kGeneric, 1.0)));
  const ModeTriple w{SignedMode(1, 2), SignedMode(-1, 1), SignedMode(-1, 1)};
  CHECK(std::abs(phase_of(kWilton, w)) < 1e-14);
  CHECK(std::abs(phase_of(kGeneric, w) - ref::sqrt10_minus_2sqrt2) < 1e-14);
  CHECK_THROWS_AS(SignedMode(1, 0), Error);
  CHECK_THROWS_AS(SignedMode(2, 1), Error);
}

TEST_CASE("canonical form is idempotent and flip invariant") {
  for (std::int64_t a = -6; a <= 6; ++a)
    for (std::int64_t b = -6; b <= 6; ++b)
      for (int s1 : {1, -1})
        for (int s2 : {1, -1})
          for (int s3 : {1, -1}) {
            if (a == 0 || b == 0) continue;
            const std::int64_t c = -s3 * (s1 * a + s2 * b);
            if (c == 0) continue;
            const ModeTriple m{SignedMode(s1, a), SignedMode(s2, b), SignedMode(s3, c)};
            REQUIRE(momentum_conserved(m));
            const auto cm = canonical_triple(m);
            CHECK(key(canonical_triple(cm)) == key(cm));
            CHECK(key(canonical_triple(flipped(m))) == key(cm));
            CHECK(key(canonical_triple({m[2], m[0], m[1]})) == key(cm));
            CHECK(cm[0].sigma == 1);
          }
}

TEST_CASE("enumeration matches brute force on small boxes") {
  for (const auto& p : {kGeneric, kWilton, PhysicalParams(1.0, 1.0 / 8.0, Depth::infinite()),
                        PhysicalParams(1.0, wilton_kappa(1.0, Depth::finite(2.0), 1), Depth::finite(2.0))}) {
    const auto fast = as_set(enumerate_resonances(p, 40, 1e-9));
    CHECK(fast == brute_resonances(p, 40, 1e-9));
    CHECK(as_set(enumerate_resonances(p, 40, 1e-9, 3)) == fast);
  }
}

TEST_CASE("resonance ground truth at maxJ=512") {
  const auto t0 = std::chrono::steady_clock::now();
  const auto wilton = enumerate_resonances(kWilton, 512, 1e-9);
  const auto generic = enumerate_resonances(kGeneric, 512, 1e-9);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(generic.empty());
  REQUIRE(wilton.size() == 2);
  const std::set<Key> expected{key(canonical_triple({SignedMode(1, 2), SignedMode(-1, 1), SignedMode(-1, 1)})),
                               key(canonical_triple({SignedMode(1, -2), SignedMode(-1, -1), SignedMode(-1, -1)}))};
  CHECK(as_set(wilton) == expected);
  CHECK(brute_resonances(kWilton, 512, 1e-9) == expected);
  CHECK(secs < 10.0);
}

TEST_CASE("maxJ=1 has no resonances") {
  for (const auto& p : {kGeneric, kWilton}) CHECK(enumerate_resonances(p, 1, 1.0).empty());
}

TEST_CASE("Wilton parameters contain the (2j; j, j) orbit") {
  for (std::int64_t j = 1; j <= 4; ++j) {
    for (const auto& d : {Depth::infinite(), Depth::finite(1.5)}) {
      const PhysicalParams p(1.0, wilton_kappa(1.0, d, j), d);
      const auto set = as_set(enumerate_resonances(p, 4 * j, 1e-9));
      CHECK(set.contains(key(canonical_triple({SignedMode(1, 2 * j), SignedMode(-1, j), SignedMode(-1, j)}))));
    }
  }
}

TEST_CASE("tolerance reduction below the gap leaves the set unchanged") {
  const auto gap = min_gap(kWilton, 64, 1e-12);
  const auto a = as_set(enumerate_resonances(kWilton, 64, 0.5 * gap.gap));
  const auto b = as_set(enumerate_resonances(kWilton, 64, 1e-9));
  const auto c = as_set(enumerate_resonances(kWilton, 64, 1e-13));
  CHECK(a == b);
  CHECK(b == c);
}

TEST_CASE("pure capillary infinite depth has no resonances") {
  const PhysicalParams p(0.0, 1.0, Depth::infinite());
  CHECK(enumerate_resonances(p, 512, 1e-9).empty());
}

TEST_CASE("min_gap") {
  const auto g100 = min_gap(kGeneric, 100, 1e-12);
  const auto g200 = min_gap(kGeneric, 200, 1e-12);
  CHECK(g100.gap > 0.0);
  CHECK(g200.gap > 0.0);
  CHECK(g200.gap <= g100.gap);
  CHECK(g200.gap == doctest::Approx(g100.gap).epsilon(1e-9));
  CHECK(momentum_conserved(g200.witness.modes));
  CHECK(std::abs(phase_of(kGeneric, g200.witness.modes)) == doctest::Approx(g200.gap));

  // pure capillary: brute force over all triples with |j| <= 50
  const PhysicalParams cap(0.0, 1.0, Depth::infinite());
  double best = 1e300;
  for (int s1 : {1, -1})
    for (int s2 : {1, -1})
      for (int s3 : {1, -1})
        for (std::int64_t a = -50; a <= 50; ++a)
          for (std::int64_t b = -50; b <= 50; ++b)
            for (std::int64_t c = -50; c <= 50; ++c) {
              if (a == 0 || b == 0 || c == 0 || s1 * a + s2 * b + s3 * c != 0) continue;
              const double ph = std::abs(phase_of(cap, {SignedMode(s1, a), SignedMode(s2, b), SignedMode(s3, c)}));
              if (ph > 1e-12) best = std::min(best, ph);
            }
  CHECK(min_gap(cap, 50, 1e-12).gap == doctest::Approx(best).epsilon(1e-14));
  CHECK_THROWS_AS(min_gap(kGeneric, 1, 1e-12), Error);
}

TEST_CASE("resonance cutoff") {
  const PhysicalParams cap(0.0, 1.0, Depth::infinite());
  const double c0 = resonance_cutoff(cap);
  CHECK(c0 >= 1.0);
  CHECK(c0 < 10.0);
  const auto n = static_cast<std::int64_t>(std::ceil(4 * c0));
  for (const auto& t : enumerate_resonances(cap, std::max<std::int64_t>(n, 2), 1e-9))
    for (const auto& m : t.modes) CHECK(double(std::abs(m.j)) < c0);

  const double cw = resonance_cutoff(kWilton);
  for (const auto& t : enumerate_resonances(kWilton, 512, 1e-9))
    for (const auto& m : t.modes) CHECK(double(std::abs(m.j)) < cw);

  // 1/kappa scaling at fixed C: compare the formula pieces directly
  const double c = certified_remainder_constant(kGeneric);
  CHECK(resonance_cutoff(kGeneric) == doctest::Approx(2.0 * 900.0 * c * c / 1.0));
}

TEST_CASE("Wilton kappa") {
  CHECK(wilton_kappa(1.0, Depth::infinite(), 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(wilton_kappa(1.0, Depth::infinite(), 2) == doctest::Approx(0.125).epsilon(1e-15));
  const double k2 = wilton_kappa(1.0, Depth::finite(2.0), 1);
  CHECK(std::abs(k2 - ref::wilton_kappa_g1_h2_j1) < 1e-14);
  const PhysicalParams p(1.0, k2, Depth::finite(2.0));
  CHECK(std::abs(omega(p, 2.0) - 2.0 * omega(p, 1.0)) < 1e-12);
  CHECK(std::abs(wilton_kappa(9.81, Depth::finite(0.5), 3) - ref::wilton_kappa_g981_h05_j3) < 1e-14);
  CHECK_THROWS_AS(wilton_kappa(0.0, Depth::infinite(), 1), Error);
  CHECK_THROWS_AS(wilton_kappa(1.0, Depth::infinite(), 0), Error);
}

TEST_CASE("Wilton kappa agrees with a bisection solve") {
  for (const double h : {0.3, 1.0, 2.0, 5.0})
    for (std::int64_t j = 1; j <= 5; ++j) {
      const Depth d = Depth::finite(h);
      auto f = [&](double k) {
        const PhysicalParams p(1.0, k, d);
        return omega(p, 2.0 * j) - 2.0 * omega(p, double(j));
      };
      double lo = 1e-10, hi = 10.0;
      REQUIRE(f(lo) * f(hi) < 0);
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
      }
      CHECK(wilton_kappa(1.0, d, j) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
    }
}

TEST_CASE("lemma bounds") {
  CHECK(superadditivity_gap(1, 1) == doctest::Approx(std::pow(2.0, 1.5) - 2.0).epsilon(1e-15));
  for (double a = 1; a <= 50; ++a)
    for (double b = 1; b <= a; ++b)
      CHECK(superadditivity_gap(a, b) == doctest::Approx(std::pow(a + b, 1.5) - std::pow(a, 1.5) - std::pow(b, 1.5)).epsilon(1e-12));

  const auto t0 = std::chrono::steady_clock::now();
  const auto r = verify_lemma_bounds(kGeneric, 1000);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(r.violations_a == 0);
  CHECK(r.violations_b == 0);
  CHECK(r.checked_a == 1000 * 1001 / 2);
  CHECK(secs < 1.0);
  const auto r2 = verify_lemma_bounds(PhysicalParams(9.81, 0.07, Depth::finite(0.5)), 1000);
  CHECK(r2.violations_b == 0);
  CHECK(r2.passed());
}
