#include "birkhoff.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "error.hpp"
#include "fft.hpp"

namespace wwbnf {

namespace {

constexpr cplx kI{0.0, 1.0};

std::array<ModeTriple, 6> permutations(const ModeTriple& m) {
  return {{{m[0], m[1], m[2]},
           {m[0], m[2], m[1]},
           {m[1], m[0], m[2]},
           {m[1], m[2], m[0]},
           {m[2], m[0], m[1]},
           {m[2], m[1], m[0]}}};
}

void require_momentum(const ModeTriple& m) {
  if (!momentum_conserved(m)) fail(ErrorCode::Domain, "momentum violated for key " + to_string(m));
}

}  // namespace

cplx mode_value(const SpectralState& z, const SignedMode& m) {
  const cplx v = z.at(m.j);
  return m.sigma > 0 ? v : std::conj(v);
}

cplx h3_coefficient(const PhysicalParams& p, const ModeTriple& m) {
  require_momentum(m);
  const auto j1 = m[0].j, j2 = m[1].j, j3 = m[2].j;
  const double bracket = static_cast<double>(m[0].sigma * m[2].sigma) * static_cast<double>(j1) *
                             static_cast<double>(j3) +
                         g0_mult(p, j1) * g0_mult(p, j3);
  const double ratio = lambda_mult(p, j2) / (lambda_mult(p, j1) * lambda_mult(p, j3));
  const double pref = static_cast<double>(m[1].sigma) / (8.0 * std::sqrt(std::numbers::pi));
  return kI * (pref * bracket * ratio);
}

cplx symmetrized_h3(const PhysicalParams& p, const ModeTriple& m) {
  cplx acc{};
  for (const auto& perm : permutations(m)) acc += h3_coefficient(p, perm);
  return acc / 6.0;
}

int multiplicity(const ModeTriple& m) {
  const bool e01 = m[0] == m[1], e12 = m[1] == m[2], e02 = m[0] == m[2];
  if (e01 && e12) return 1;
  if (e01 || e12 || e02) return 3;
  return 6;
}

CubicHamiltonian::CubicHamiltonian(PhysicalParams p, double tol, std::int64_t max_j)
    : params_(p), tol_(tol), max_j_(max_j) {
  p.validate();
}

CubicHamiltonian::Key CubicHamiltonian::key_of(const ModeTriple& m) {
  return {m[0].sigma, m[0].j, m[1].sigma, m[1].j, m[2].sigma, m[2].j};
}

void CubicHamiltonian::set(const ModeTriple& m, cplx coeff) {
  require_momentum(m);
  const ModeTriple s = sorted_modes(m);
  terms_[key_of(s)] = CubicTerm{s, coeff, multiplicity(s)};
}

void CubicHamiltonian::set_with_partner(const ModeTriple& m, cplx coeff) {
  set(m, coeff);
  set(flipped(m), std::conj(coeff));
}

const CubicTerm* CubicHamiltonian::find(const ModeTriple& m) const {
  const auto it = terms_.find(key_of(sorted_modes(m)));
  return it == terms_.end() ? nullptr : &it->second;
}

std::vector<CubicTerm> CubicHamiltonian::terms() const {
  std::vector<CubicTerm> out;
  out.reserve(terms_.size());
  for (const auto& [k, t] : terms_) out.push_back(t);
  return out;
}

std::int64_t CubicHamiltonian::support() const {
  std::int64_t s = 0;
  for (const auto& [k, t] : terms_)
    for (const auto& m : t.key) s = std::max(s, std::abs(m.j));
  return s;
}

double CubicHamiltonian::reality_defect() const {
  double worst = 0.0;
  for (const auto& [k, t] : terms_) {
    const CubicTerm* partner = find(flipped(t.key));
    worst = std::max(worst, partner ? std::abs(partner->coeff - std::conj(t.coeff)) : std::abs(t.coeff));
  }
  return worst;
}

cplx CubicHamiltonian::evaluate(const SpectralState& z) const {
  cplx acc{};
  for (const auto& [k, t] : terms_) {
    acc += static_cast<double>(t.mult) * t.coeff * mode_value(z, t.key[0]) * mode_value(z, t.key[1]) *
           mode_value(z, t.key[2]);
  }
  return acc;
}

SpectralState CubicHamiltonian::gradient_zbar(const SpectralState& z) const {
  SpectralState grad(z.max_mode());
  for (const auto& [k, t] : terms_) {
    const cplx c = static_cast<double>(t.mult) * t.coeff;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto& v = t.key[i];
      if (v.sigma > 0 || !grad.contains(v.j)) continue;
      const auto& a = t.key[(i + 1) % 3];
      const auto& b = t.key[(i + 2) % 3];
      grad[v.j] += c * mode_value(z, a) * mode_value(z, b);
    }
  }
  return grad;
}

CubicHamiltonian assemble_resonant_hamiltonian(const PhysicalParams& p, std::int64_t max_j, double tol,
                                               int threads) {
  CubicHamiltonian h(p, tol, max_j);
  for (const auto& t : enumerate_resonances(p, max_j, tol, threads)) {
    h.set_with_partner(t.modes, symmetrized_h3(p, t.modes));
  }
  return h;
}

CubicHamiltonian full_cubic_hamiltonian(const PhysicalParams& p, std::int64_t max_j) {
  CubicHamiltonian h(p, kDefaultResonanceTol, max_j);
  for (const auto& m : momentum_triples(max_j)) h.set_with_partner(m, symmetrized_h3(p, m));
  return h;
}

CubicHamiltonian expand_h3_from_real(const PhysicalParams& p, std::int64_t max_j) {
  p.validate();
  require(max_j >= 1, "maxJ must be >= 1");
  int m = 8;
  while (m <= 3 * max_j) m *= 2;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);

  // Grid samples of eta, d_x psi and G(0) psi contributed by each variable z^sigma_j.
  struct Basis {
    std::vector<cplx> eta, dpsi, gpsi;
  };
  ComplexFft fft(m);
  std::map<std::pair<int, std::int64_t>, Basis> basis;
  std::vector<cplx> psi(static_cast<std::size_t>(m)), spec(static_cast<std::size_t>(m)),
      work(static_cast<std::size_t>(m));
  for (int sigma : {1, -1}) {
    for (std::int64_t j = -max_j; j <= max_j; ++j) {
      if (j == 0) continue;
      const double lam = lambda_mult(p, j);
      const double f = static_cast<double>(sigma * j);
      Basis b;
      b.eta.resize(psi.size());
      for (int x = 0; x < m; ++x) {
        const cplx e = norm * std::polar(1.0, f * 2.0 * std::numbers::pi * x / m);
        b.eta[static_cast<std::size_t>(x)] = -kI * static_cast<double>(sigma) * lam * inv_sqrt2 * e;
        psi[static_cast<std::size_t>(x)] = inv_sqrt2 / lam * e;
      }
      fft.forward(psi, spec);
      for (int k = 0; k < m; ++k) {
        const double kk = k < m / 2 ? k : k - m;
        work[static_cast<std::size_t>(k)] = kI * kk * spec[static_cast<std::size_t>(k)] / static_cast<double>(m);
      }
      b.dpsi.resize(psi.size());
      fft.backward(work, b.dpsi);
      for (int k = 0; k < m; ++k) {
        const double kk = k < m / 2 ? k : k - m;
        work[static_cast<std::size_t>(k)] = g0_symbol(p, kk) * spec[static_cast<std::size_t>(k)] / static_cast<double>(m);
      }
      b.gpsi.resize(psi.size());
      fft.backward(work, b.gpsi);
      basis.emplace(std::pair{sigma, j}, std::move(b));
    }
  }

  const double dx = 2.0 * std::numbers::pi / m;
  // A(a; b, c) = 1/2 int eta_a (psi_b' psi_c' - G psi_b G psi_c) dx
  auto a_term = [&](const SignedMode& a, const SignedMode& b, const SignedMode& c) {
    const auto& ba = basis.at({a.sigma, a.j});
    const auto& bb = basis.at({b.sigma, b.j});
    const auto& bc = basis.at({c.sigma, c.j});
    cplx acc{};
    for (std::size_t x = 0; x < ba.eta.size(); ++x)
      acc += ba.eta[x] * (bb.dpsi[x] * bc.dpsi[x] - bb.gpsi[x] * bc.gpsi[x]);
    return 0.5 * dx * acc;
  };

  CubicHamiltonian h(p, kDefaultResonanceTol, max_j);
  for (const auto& t : momentum_triples(max_j)) {
    for (const auto& key : {t, flipped(t)}) {
      const cplx c = (a_term(key[0], key[1], key[2]) + a_term(key[1], key[0], key[2]) +
                      a_term(key[2], key[0], key[1])) /
                     3.0;
      h.set(key, c);
    }
  }
  return h;
}

double hamiltonian_h2(const PhysicalParams& p, const SpectralState& z) {
  double acc = 0.0;
  for (int j = 1; j <= z.max_mode(); ++j) {
    acc += omega(p, j) * (std::norm(z[j]) + std::norm(z[-j]));
  }
  return acc;
}

std::vector<std::int64_t> Polynomial::key_of(const Monomial& m) {
  std::vector<std::int64_t> k;
  k.reserve(2 * m.size());
  for (const auto& v : m) {
    k.push_back(v.sigma);
    k.push_back(v.j);
  }
  return k;
}

void Polynomial::add(Monomial m, cplx c) {
  std::sort(m.begin(), m.end(), canonical_less);
  auto key = key_of(m);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), std::pair{std::move(m), c});
  } else {
    it->second.second += c;
  }
}

double Polynomial::max_abs_coeff() const {
  double worst = 0.0;
  for (const auto& [k, t] : terms_) worst = std::max(worst, std::abs(t.second));
  return worst;
}

cplx Polynomial::evaluate(const SpectralState& z) const {
  cplx acc{};
  for (const auto& [k, t] : terms_) {
    cplx prod = t.second;
    for (const auto& v : t.first) prod *= mode_value(z, v);
    acc += prod;
  }
  return acc;
}

Polynomial Polynomial::derivative(const SignedMode& v) const {
  Polynomial out;
  for (const auto& [k, t] : terms_) {
    const auto count = std::count(t.first.begin(), t.first.end(), v);
    if (count == 0) continue;
    Monomial rest = t.first;
    rest.erase(std::find(rest.begin(), rest.end(), v));
    out.add(std::move(rest), static_cast<double>(count) * t.second);
  }
  return out;
}

std::vector<SignedMode> Polynomial::variables() const {
  std::vector<SignedMode> vars;
  for (const auto& [k, t] : terms_) vars.insert(vars.end(), t.first.begin(), t.first.end());
  std::sort(vars.begin(), vars.end(), canonical_less);
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

Polynomial Polynomial::from_cubic(const CubicHamiltonian& h) {
  Polynomial out;
  for (const auto& t : h.terms())
    out.add({t.key[0], t.key[1], t.key[2]}, static_cast<double>(t.mult) * t.coeff);
  return out;
}

Polynomial Polynomial::quadratic(const PhysicalParams& p, std::int64_t max_j) {
  Polynomial out;
  for (std::int64_t j = -max_j; j <= max_j; ++j) {
    if (j == 0) continue;
    out.add({SignedMode(1, j), SignedMode(-1, j)}, omega(p, static_cast<double>(j)));
  }
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ka, ta] : a.terms_) {
    for (const auto& [kb, tb] : b.terms_) {
      Polynomial::Monomial m = ta.first;
      m.insert(m.end(), tb.first.begin(), tb.first.end());
      out.add(std::move(m), ta.second * tb.second);
    }
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [k, t] : b.terms_) out.add(t.first, t.second);
  return out;
}

Polynomial Polynomial::scaled(cplx s) const {
  Polynomial out = *this;
  for (auto& [k, t] : out.terms_) t.second *= s;
  return out;
}

Polynomial poisson_bracket(const Polynomial& f, const Polynomial& g) {
  std::set<std::int64_t> js;
  for (const auto& v : f.variables()) js.insert(v.j);
  for (const auto& v : g.variables()) js.insert(v.j);
  Polynomial out;
  for (const auto j : js) {
    const SignedMode zp(1, j), zm(-1, j);
    out = out + g.derivative(zp) * f.derivative(zm);
    out = out + (g.derivative(zm) * f.derivative(zp)).scaled(-1.0);
  }
  return out.scaled(kI);
}

void QuadraticVectorField::add(const SignedMode& target, SignedMode a, SignedMode b, cplx c) {
  if (canonical_less(b, a)) std::swap(a, b);
  const Key k{target.sigma, target.j, a.sigma, a.j, b.sigma, b.j};
  auto it = entries_.find(k);
  if (it == entries_.end()) {
    entries_.emplace(k, VectorFieldEntry{target, a, b, c});
  } else {
    it->second.coeff += c;
  }
}

std::vector<VectorFieldEntry> QuadraticVectorField::entries() const {
  std::vector<VectorFieldEntry> out;
  out.reserve(entries_.size());
  for (const auto& [k, e] : entries_) out.push_back(e);
  return out;
}

double QuadraticVectorField::distance(const QuadraticVectorField& other) const {
  double worst = 0.0;
  for (const auto& [k, e] : entries_) {
    const auto it = other.entries_.find(k);
    worst = std::max(worst, std::abs(e.coeff - (it == other.entries_.end() ? cplx{} : it->second.coeff)));
  }
  for (const auto& [k, e] : other.entries_) {
    if (!entries_.contains(k)) worst = std::max(worst, std::abs(e.coeff));
  }
  return worst;
}

QuadraticVectorField hamiltonian_vector_field(const CubicHamiltonian& h) {
  QuadraticVectorField x;
  for (const auto& t : h.terms()) {
    const cplx c = static_cast<double>(t.mult) * t.coeff;
    for (std::size_t i = 0; i < 3; ++i) {
      // d/dz^v feeds the component along d/dz^{-v}.
      const SignedMode target = t.key[i].flipped();
      x.add(target, t.key[(i + 1) % 3], t.key[(i + 2) % 3], kI * static_cast<double>(target.sigma) * c);
    }
  }
  return x;
}

QuadraticVectorField pi_ker(const QuadraticVectorField& x, const PhysicalParams& p, double tol) {
  QuadraticVectorField out;
  for (const auto& e : x.entries()) {
    const double ph = -e.target.sigma * omega(p, static_cast<double>(e.target.j)) +
                      e.a.sigma * omega(p, static_cast<double>(e.a.j)) +
                      e.b.sigma * omega(p, static_cast<double>(e.b.j));
    if (std::abs(ph) <= tol) out.add(e.target, e.a, e.b, e.coeff);
  }
  return out;
}

double homological_divisor(const PhysicalParams& p, const HomologicalKey& key) {
  return key.sigma * omega(p, static_cast<double>(key.j)) - key.sigma_p * omega(p, static_cast<double>(key.k)) -
         key.eps * omega(p, static_cast<double>(key.n));
}

ModeTriple homological_triple(const HomologicalKey& key) {
  return {SignedMode(key.sigma, key.j), SignedMode(-key.sigma_p, key.k), SignedMode(-key.eps, key.n)};
}

namespace {

void check_key(const HomologicalKey& key) {
  const auto bad_sign = [](int s) { return s != 1 && s != -1; };
  if (bad_sign(key.sigma) || bad_sign(key.sigma_p) || bad_sign(key.eps))
    fail(ErrorCode::InvalidArgument, "homological key signs must be +1 or -1");
  if (key.n == 0 || key.k == 0 || key.j == 0) fail(ErrorCode::Domain, "homological key has a zero mode");
  if (key.eps * key.n + key.sigma_p * key.k != key.sigma * key.j)
    fail(ErrorCode::Domain, "homological key violates eps n + sigma' k = sigma j");
}

}  // namespace

HomologicalSolution solve_homological(const PhysicalParams& p, const HomologicalCoefficients& r, double tol) {
  std::int64_t max_j = 1;
  for (const auto& [key, v] : r) {
    check_key(key);
    max_j = std::max({max_j, std::abs(key.n), std::abs(key.k), std::abs(key.j)});
  }
  return solve_homological(p, r, tol, enumerate_resonances(p, max_j, tol));
}

HomologicalSolution solve_homological(const PhysicalParams& p, const HomologicalCoefficients& r, double tol,
                                      const std::vector<Triple>& resonant) {
  p.validate();
  require(tol > 0.0, "resonance tolerance must be > 0");
  std::set<std::array<std::int64_t, 6>> res_keys;
  for (const auto& t : resonant) {
    const auto c = canonical_triple(t.modes);
    res_keys.insert({c[0].sigma, c[0].j, c[1].sigma, c[1].j, c[2].sigma, c[2].j});
  }
  HomologicalSolution sol;
  for (const auto& [key, rv] : r) {
    check_key(key);
    const double d = homological_divisor(p, key);
    const auto c = canonical_triple(homological_triple(key));
    const bool is_res = res_keys.contains({c[0].sigma, c[0].j, c[1].sigma, c[1].j, c[2].sigma, c[2].j});
    cplx gv{}, rr{};
    if (is_res) {
      rr = rv;
      ++sol.resonant_keys;
    } else {
      if (std::abs(d) <= tol) {
        std::ostringstream os;
        os << "divisor " << d << " below tolerance " << tol << " on non-resonant key "
           << to_string(homological_triple(key));
        fail(ErrorCode::Domain, os.str());
      }
      gv = rv / (kI * d);
    }
    sol.g[key] = gv;
    sol.r_res[key] = rr;
    sol.residual = std::max(sol.residual, std::abs(-kI * gv * d + rv - rr));
  }
  return sol;
}

void write_table(std::ostream& os, const CubicHamiltonian& h) {
  const auto& p = h.params();
  os << std::setprecision(17);
  os << "# wwbnf cubic table\n";
  os << "# g " << p.g << "\n# kappa " << p.kappa << "\n# depth " << p.depth.to_string() << "\n";
  os << "# tol " << h.tol() << "\n# max_j " << h.max_j() << "\n# symmetrized 1\n";
  os << "# columns sigma1 j1 sigma2 j2 sigma3 j3 re im multiplicity\n";
  for (const auto& t : h.terms()) {
    for (const auto& m : t.key) os << m.sigma << ' ' << m.j << ' ';
    os << t.coeff.real() << ' ' << t.coeff.imag() << ' ' << t.mult << '\n';
  }
}

void write_table(const std::string& path, const CubicHamiltonian& h) {
  std::ofstream os(path);
  if (!os) fail(ErrorCode::Io, "cannot open " + path + " for writing");
  write_table(os, h);
  if (!os) fail(ErrorCode::Io, "write failed for " + path);
}

CubicHamiltonian read_table(std::istream& is) {
  double g = std::numeric_limits<double>::quiet_NaN(), kappa = g, tol = kDefaultResonanceTol;
  std::string depth;
  std::int64_t max_j = 0;
  std::vector<std::pair<ModeTriple, std::pair<cplx, int>>> rows;
  std::string line;
  int lineno = 0;
  auto bad = [&](const std::string& what) {
    fail(ErrorCode::Io, "table line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (line[0] == '#') {
      std::string hash, name;
      ls >> hash >> name;
      if (name == "g") ls >> g;
      else if (name == "kappa") ls >> kappa;
      else if (name == "depth") ls >> depth;
      else if (name == "tol") ls >> tol;
      else if (name == "max_j") ls >> max_j;
      if (ls.fail()) bad("malformed header");
      continue;
    }
    int s[3];
    std::int64_t j[3];
    double re = 0, im = 0;
    int mult = 0;
    for (int i = 0; i < 3; ++i) ls >> s[i] >> j[i];
    ls >> re >> im >> mult;
    if (ls.fail()) bad("expected 'sigma1 j1 sigma2 j2 sigma3 j3 re im multiplicity'");
    std::string extra;
    if (ls >> extra) bad("trailing content");
    ModeTriple m;
    try {
      m = {SignedMode(s[0], j[0]), SignedMode(s[1], j[1]), SignedMode(s[2], j[2])};
    } catch (const Error& e) {
      bad(e.what());
    }
    if (!momentum_conserved(m)) bad("momentum violated");
    if (multiplicity(m) != mult) bad("multiplicity does not match the key");
    rows.push_back({m, {cplx(re, im), mult}});
  }
  if (std::isnan(g) || std::isnan(kappa) || depth.empty()) fail(ErrorCode::Io, "table header lacks g/kappa/depth");
  Depth d = Depth::infinite();
  if (depth != "inf") {
    try {
      d = Depth::finite(std::stod(depth));
    } catch (const std::logic_error&) {
      fail(ErrorCode::Io, "bad depth '" + depth + "' in table header");
    }
  }
  CubicHamiltonian h(PhysicalParams(g, kappa, d), tol, max_j);
  for (const auto& [m, v] : rows) h.set(m, v.first);
  return h;
}

CubicHamiltonian read_table(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(ErrorCode::Io, "cannot open " + path);
  return read_table(is);
}

TableComparison compare_tables(const CubicHamiltonian& a, const CubicHamiltonian& b) {
  TableComparison cmp;
  auto consider = [&](const CubicTerm& ta, const CubicTerm* tb) {
    const bool matched = tb && tb->mult == ta.mult;
    const double diff = matched ? std::abs(ta.coeff - tb->coeff) : std::abs(ta.coeff);
    if (matched) {
      ++cmp.compared;
      const double scale = std::max(std::abs(ta.coeff), std::abs(tb->coeff));
      if (scale > 0) cmp.max_rel_diff = std::max(cmp.max_rel_diff, diff / scale);
    } else {
      ++cmp.missing;
    }
    if (!cmp.has_worst || diff > cmp.max_abs_diff) {
      cmp.max_abs_diff = diff;
      cmp.worst_key = ta.key;
      cmp.has_worst = true;
    }
  };
  for (const auto& t : a.terms()) consider(t, b.find(t.key));
  for (const auto& t : b.terms())
    if (!a.find(t.key)) consider(t, nullptr);
  return cmp;
}

}  // namespace wwbnf
