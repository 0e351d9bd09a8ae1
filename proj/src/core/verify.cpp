#include "verify.hpp"

#include <random>
#include <sstream>

#include "error.hpp"

namespace wwbnf {

namespace {

std::string key_string(const ModeTriple& m) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < 3; ++i) os << (i ? "," : "") << (m[i].sigma > 0 ? '+' : '-') << ':' << m[i].j;
  os << ')';
  return os.str();
}

CheckResult lemma_check(const PhysicalParams& p, const VerifyConfig& cfg) {
  const auto r = verify_lemma_bounds(p, cfg.lemma_max_j);
  CheckResult c;
  c.name = "inequality_sweep";
  c.value = double(r.violations_a + r.violations_b);
  c.passed = r.passed();
  std::ostringstream os;
  os << "max_j=" << r.max_j << " checked_a=" << r.checked_a << " checked_b=" << r.checked_b
     << " violations_a=" << r.violations_a << " violations_b=" << r.violations_b;
  if (!r.violations.empty()) {
    const auto& v = r.violations.front();
    os << " first=(" << v.inequality << ", n2=" << v.n2 << ", n3=" << v.n3 << ")";
  }
  c.detail = os.str();
  return c;
}

CheckResult oracle_check(const PhysicalParams& p, const VerifyConfig& cfg) {
  CheckResult c;
  c.name = "coefficient_oracle";
  c.tolerance = cfg.oracle_tol;
  const CubicHamiltonian oracle = expand_h3_from_real(p, cfg.oracle_max_j);
  CubicHamiltonian table;
  std::string source = "closed form";
  if (cfg.table_path) {
    table = read_table(*cfg.table_path);
    source = *cfg.table_path;
    if (!(table.params() == p)) fail(ErrorCode::InvalidArgument, "table parameters differ from the run parameters");
  } else {
    table = full_cubic_hamiltonian(p, cfg.oracle_max_j);
  }
  // only keys inside the oracle box are comparable
  CubicHamiltonian clipped(p, table.tol(), cfg.oracle_max_j);
  for (const auto& t : table.terms()) {
    bool inside = true;
    for (const auto& m : t.key) inside = inside && std::llabs(m.j) <= cfg.oracle_max_j;
    if (inside) clipped.set(t.key, t.coeff);
  }
  const auto cmp = compare_tables(oracle, clipped);
  c.value = cmp.max_abs_diff;
  c.passed = cmp.missing == 0 && cmp.max_abs_diff <= cfg.oracle_tol;
  std::ostringstream os;
  os << "source=" << source << " max_j=" << cfg.oracle_max_j << " compared=" << cmp.compared
     << " missing=" << cmp.missing << " max_abs_diff=" << cmp.max_abs_diff;
  if (cmp.has_worst) os << " worst_key=" << key_string(cmp.worst_key);
  c.detail = os.str();
  return c;
}

CheckResult homological_check(const PhysicalParams& p, const VerifyConfig& cfg) {
  CheckResult c;
  c.name = "homological_residual";
  c.tolerance = cfg.homological_tol;
  const auto resonant = enumerate_resonances(p, 3 * cfg.homological_max_index, cfg.resonance_tol, cfg.threads);
  double worst = 0.0;
  std::size_t resonant_keys = 0;
  for (int i = 0; i < cfg.homological_instances; ++i) {
    const auto r = random_homological_input(cfg.seed + std::uint64_t(i), cfg.homological_keys,
                                            cfg.homological_max_index);
    const auto s = solve_homological(p, r, cfg.resonance_tol, resonant);
    worst = std::max(worst, s.residual);
    resonant_keys += s.resonant_keys;
  }
  c.value = worst;
  c.passed = worst <= cfg.homological_tol;
  std::ostringstream os;
  os << "instances=" << cfg.homological_instances << " keys=" << cfg.homological_keys
     << " resonant_keys_total=" << resonant_keys << " max_residual=" << worst;
  c.detail = os.str();
  return c;
}

CheckResult bracket_check(const PhysicalParams& p, const VerifyConfig& cfg) {
  CheckResult c;
  c.name = "bracket_cancellation";
  c.tolerance = cfg.bracket_tol;
  const auto h = assemble_resonant_hamiltonian(p, cfg.bnf_max_j, cfg.resonance_tol, cfg.threads);
  const auto br = poisson_bracket(Polynomial::from_cubic(h), Polynomial::quadratic(p, cfg.bnf_max_j));
  c.value = br.max_abs_coeff();
  c.passed = c.value < cfg.bracket_tol;
  std::ostringstream os;
  os << "resonant_terms=" << h.size() << " bracket_terms=" << br.size() << " max_coeff=" << c.value;
  c.detail = os.str();
  return c;
}

}  // namespace

void VerifyConfig::validate() const {
  require(lemma_max_j >= 1, "verify.lemma_max_j must be >= 1");
  require(oracle_max_j >= 1, "verify.oracle_max_j must be >= 1");
  require(bnf_max_j >= 2, "verify.bnf_max_j must be >= 2");
  require(homological_instances >= 1 && homological_keys >= 3, "homological sizes too small");
  require(homological_max_index >= 2, "verify.homological_max_index must be >= 2");
  require(oracle_tol > 0 && homological_tol > 0 && bracket_tol > 0 && resonance_tol > 0, "tolerances must be > 0");
  require(threads >= 1, "threads must be >= 1");
}

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return !checks.empty();
}

HomologicalCoefficients random_homological_input(std::uint64_t seed, int n, std::int64_t max_index) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> sign(0, 1);
  std::uniform_int_distribution<std::int64_t> idx(1, max_index);
  HomologicalCoefficients r;
  r[{1, 1, 1, 1, 1, 2}] = cplx(nd(rng), nd(rng));
  r[{-1, -1, -1, 1, 1, 2}] = cplx(nd(rng), nd(rng));
  while (r.size() < std::size_t(n)) {
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
  return r;
}

VerifyReport run_verify(const PhysicalParams& p, const VerifyConfig& cfg) {
  p.validate();
  cfg.validate();
  VerifyReport rep;
  rep.checks.push_back(lemma_check(p, cfg));
  rep.checks.push_back(oracle_check(p, cfg));
  rep.checks.push_back(homological_check(p, cfg));
  rep.checks.push_back(bracket_check(p, cfg));
  return rep;
}

}  // namespace wwbnf
