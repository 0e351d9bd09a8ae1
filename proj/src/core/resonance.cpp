#include "resonance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>

#include "error.hpp"

namespace wwbnf {

SignedMode::SignedMode(int s, std::int64_t jj) : sigma(s), j(jj) {
  if (s != 1 && s != -1) fail(ErrorCode::InvalidArgument, "sigma must be +1 or -1");
  if (jj == 0) fail(ErrorCode::Domain, "mode index j must be nonzero");
}

bool canonical_less(const SignedMode& a, const SignedMode& b) {
  if (a.sigma != b.sigma) return a.sigma > b.sigma;
  const auto aa = std::abs(a.j), ab = std::abs(b.j);
  if (aa != ab) return aa > ab;
  return a.j > b.j;
}

ModeTriple sorted_modes(ModeTriple m) {
  std::sort(m.begin(), m.end(), canonical_less);
  return m;
}

ModeTriple flipped(const ModeTriple& m) { return {m[0].flipped(), m[1].flipped(), m[2].flipped()}; }

ModeTriple canonical_triple(const ModeTriple& m) {
  const int plus = static_cast<int>(std::count_if(m.begin(), m.end(), [](const SignedMode& s) { return s.sigma > 0; }));
  return sorted_modes(plus % 2 == 1 ? m : flipped(m));
}

bool momentum_conserved(const ModeTriple& m) {
  return m[0].frequency() + m[1].frequency() + m[2].frequency() == 0;
}

double phase_of(const PhysicalParams& p, const ModeTriple& m) {
  double s = 0.0;
  for (const auto& mode : m) {
    if (mode.j == 0) fail(ErrorCode::Domain, "zero mode in phase");
    s += mode.sigma * omega(p, static_cast<double>(mode.j));
  }
  return s;
}

namespace {

auto key_of(const ModeTriple& m) {
  return std::make_tuple(m[0].sigma, m[0].j, m[1].sigma, m[1].j, m[2].sigma, m[2].j);
}

bool triple_less(const Triple& a, const Triple& b) { return key_of(a.modes) < key_of(b.modes); }
bool triple_eq(const Triple& a, const Triple& b) { return key_of(a.modes) == key_of(b.modes); }

// Visits every canonical momentum-conserving triple with max|j| <= max_j whose
// second index lies in [lo, hi). Canonical triples are (+a,+b,+c) with
// a+b+c = 0 or (+a,-b,-c) with a = b+c; fixing (b, c) determines a.
template <class Visit>
void sweep_range(std::int64_t max_j, std::int64_t lo, std::int64_t hi, Visit&& visit) {
  for (std::int64_t b = lo; b < hi; ++b) {
    if (b == 0) continue;
    for (std::int64_t c = -max_j; c <= max_j; ++c) {
      if (c == 0) continue;
      const std::int64_t a_minus = b + c;
      if (a_minus != 0 && std::abs(a_minus) <= max_j) {
        const ModeTriple t{SignedMode(1, a_minus), SignedMode(-1, b), SignedMode(-1, c)};
        // Each unordered {b, c} shows up twice; keep the canonical ordering only.
        if (!canonical_less(t[2], t[1])) visit(t);
      }
      const std::int64_t a_plus = -(b + c);
      if (a_plus != 0 && std::abs(a_plus) <= max_j) {
        const ModeTriple t{SignedMode(1, a_plus), SignedMode(1, b), SignedMode(1, c)};
        if (!canonical_less(t[1], t[0]) && !canonical_less(t[2], t[1])) visit(t);
      }
    }
  }
}

template <class Worker>
void run_partitioned(std::int64_t max_j, int threads, Worker&& worker) {
  threads = std::max(1, threads);
  const std::int64_t span = 2 * max_j + 1;
  if (threads == 1) {
    worker(0, -max_j, max_j + 1);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    const std::int64_t lo = -max_j + span * t / threads;
    const std::int64_t hi = -max_j + span * (t + 1) / threads;
    pool.emplace_back([&, t, lo, hi] { worker(t, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<Triple> enumerate_resonances(const PhysicalParams& p, std::int64_t max_j, double tol,
                                         int threads) {
  p.validate();
  require(max_j >= 1, "maxJ must be >= 1");
  require(tol > 0.0, "resonance tolerance must be > 0");
  threads = std::max(1, threads);
  std::vector<std::vector<Triple>> partial(static_cast<std::size_t>(threads));
  run_partitioned(max_j, threads, [&](int t, std::int64_t lo, std::int64_t hi) {
    sweep_range(max_j, lo, hi, [&](const ModeTriple& m) {
      const double ph = phase_of(p, m);
      if (std::abs(ph) <= tol) partial[static_cast<std::size_t>(t)].push_back({m, ph});
    });
  });
  std::vector<Triple> out;
  for (auto& part : partial) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end(), triple_less);
  out.erase(std::unique(out.begin(), out.end(), triple_eq), out.end());
  return out;
}

std::vector<ModeTriple> momentum_triples(std::int64_t max_j) {
  require(max_j >= 1, "maxJ must be >= 1");
  std::vector<Triple> all;
  sweep_range(max_j, -max_j, max_j + 1, [&](const ModeTriple& m) { all.push_back({m, 0.0}); });
  std::sort(all.begin(), all.end(), triple_less);
  all.erase(std::unique(all.begin(), all.end(), triple_eq), all.end());
  std::vector<ModeTriple> out;
  out.reserve(all.size());
  for (const auto& t : all) out.push_back(t.modes);
  return out;
}

GapResult min_gap(const PhysicalParams& p, std::int64_t max_j, double exclude_tol, int threads) {
  p.validate();
  require(max_j >= 2, "maxJ must be >= 2 for min_gap");
  threads = std::max(1, threads);
  std::vector<GapResult> best(static_cast<std::size_t>(threads),
                              GapResult{std::numeric_limits<double>::infinity(), {}});
  run_partitioned(max_j, threads, [&](int t, std::int64_t lo, std::int64_t hi) {
    auto& b = best[static_cast<std::size_t>(t)];
    sweep_range(max_j, lo, hi, [&](const ModeTriple& m) {
      const double ph = phase_of(p, m);
      const double a = std::abs(ph);
      if (a <= exclude_tol) return;
      if (a < b.gap || (a == b.gap && key_of(m) < key_of(b.witness.modes))) b = {a, {m, ph}};
    });
  });
  GapResult out = best.front();
  for (const auto& b : best) {
    if (b.gap < out.gap || (b.gap == out.gap && key_of(b.witness.modes) < key_of(out.witness.modes))) out = b;
  }
  if (!std::isfinite(out.gap)) fail(ErrorCode::Domain, "no non-resonant triple found below maxJ");
  return out;
}

double resonance_cutoff(const PhysicalParams& p) {
  p.validate();
  const double c = certified_remainder_constant(p);
  const double c1 = (30.0 * c) * (30.0 * c) / p.kappa;
  return std::max(2.0 * c1, 1.0);
}

double wilton_kappa(double g, Depth depth, std::int64_t j) {
  if (!(g > 0.0)) fail(ErrorCode::InvalidArgument, "Wilton ripples need g > 0");
  if (j < 1) fail(ErrorCode::InvalidArgument, "Wilton index j must be >= 1");
  const double jd = static_cast<double>(j);
  // Omega(2j)^2 = 4 Omega(j)^2 is linear in kappa. With T = tanh(hj) and
  // tanh(2hj) = 2T/(1+T^2) it reduces to kappa = g T^2 / (j^2 (3 - T^2)).
  const double t = depth.is_infinite() ? 1.0 : stable_tanh(depth.value() * jd);
  const double kappa = g * t * t / (jd * jd * (3.0 - t * t));
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    std::ostringstream os;
    os << "no Wilton root for g=" << g << " h=" << depth.to_string() << " j=" << j;
    fail(ErrorCode::NoConvergence, os.str());
  }
  return kappa;
}

double superadditivity_gap(double n2, double n3) {
  const double s2 = std::sqrt(n2), s3 = std::sqrt(n3);
  const double n2_32 = n2 * s2, n3_32 = n3 * s3;
  const double num = 9.0 * (n2 * n2 * n2 * n2 * n3 * n3 + n2 * n2 * n3 * n3 * n3 * n3) + 14.0 * n2 * n2 * n2 * n3 * n3 * n3;
  const double den = (std::pow(n2 + n3, 1.5) + n2_32 + n3_32) * (3.0 * (n2 * n2 * n3 + n2 * n3 * n3) + 2.0 * n2_32 * n3_32);
  return num / den;
}

LemmaReport verify_lemma_bounds(const PhysicalParams& p, std::int64_t max_j) {
  p.validate();
  require(max_j >= 2, "maxJ must be >= 2 for the lemma sweep");
  constexpr std::size_t kMaxListed = 32;
  LemmaReport r;
  r.max_j = max_j;
  r.remainder_constant = certified_remainder_constant(p);
  r.threshold_n2n3 = (30.0 * r.remainder_constant) * (30.0 * r.remainder_constant) / p.kappa;
  r.worst_margin_a = std::numeric_limits<double>::infinity();
  r.worst_margin_b = std::numeric_limits<double>::infinity();
  const double sk = std::sqrt(p.kappa);
  for (std::int64_t n2 = 1; n2 <= max_j; ++n2) {
    const double a2 = static_cast<double>(n2);
    const double bound_a = std::sqrt(a2) / 5.0;
    const double bound_b = std::sqrt(a2) * sk / 10.0;
    for (std::int64_t n3 = 1; n3 <= n2; ++n3) {
      const double a3 = static_cast<double>(n3);
      const double va = superadditivity_gap(a2, a3);
      ++r.checked_a;
      r.worst_margin_a = std::min(r.worst_margin_a, va - bound_a);
      if (va < bound_a) {
        ++r.violations_a;
        if (r.violations.size() < kMaxListed) r.violations.push_back({n2, n3, va, bound_a, 'a'});
      }
      if (n2 + n3 > max_j || a2 * a3 < r.threshold_n2n3) continue;
      const double vb = std::abs(omega(p, a2 + a3) - omega(p, a2) - omega(p, a3));
      ++r.checked_b;
      r.worst_margin_b = std::min(r.worst_margin_b, vb - bound_b);
      if (vb < bound_b) {
        ++r.violations_b;
        if (r.violations.size() < kMaxListed) r.violations.push_back({n2, n3, vb, bound_b, 'b'});
      }
    }
  }
  if (r.checked_b == 0) r.worst_margin_b = 0.0;
  return r;
}

std::string to_string(const ModeTriple& m) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < 3; ++i) {
    if (i) os << ',';
    os << (m[static_cast<std::size_t>(i)].sigma > 0 ? '+' : '-') << m[static_cast<std::size_t>(i)].j;
  }
  os << ')';
  return os.str();
}

}  // namespace wwbnf
