#pragma once

// Second-order finite-difference Dirichlet-Neumann map on the periodic strip
// -h < y < eta(x), independent of the Taylor-series DNO.
//
// The fluid domain is mapped to [0, 2 pi) x [0, 1] by y = -h + sigma (h + eta(x)).
// With H = h + eta and a = sigma_x = -sigma H'/H, Laplace's equation becomes
//   Phi_xx + 2 a Phi_xsigma + (a^2 + 1/H^2) Phi_sigmasigma + (a_x + a a_sigma) Phi_sigma = 0,
// with Phi = psi at sigma = 1 and Phi_sigma = 0 at sigma = 0 (ghost-point reflection).
// G(eta) psi = Phi_sigma (1 + eta_x^2) / H - eta_x psi_x at the surface.

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracle {

struct Profile {
  std::function<double(double)> f, fx, fxx;
};

// Returns G(eta) psi sampled at x_i = 2 pi i / nx.
inline std::vector<double> elliptic_dno(double depth, const Profile& eta, const Profile& psi, int nx, int ns) {
  const double dx = 2 * std::numbers::pi / nx;
  const double ds = 1.0 / ns;
  // unknowns: sigma levels k = 0..ns-1 (level ns is Dirichlet)
  auto id = [&](int i, int k) { return k * nx + ((i % nx) + nx) % nx; };
  const int n = nx * ns;
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(std::size_t(n) * 9);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  std::vector<double> top(nx);
  for (int i = 0; i < nx; ++i) top[i] = psi.f(i * dx);

  for (int k = 0; k < ns; ++k) {
    const double s = k * ds;
    for (int i = 0; i < nx; ++i) {
      const double x = i * dx;
      const double hh = depth + eta.f(x), hp = eta.fx(x), hpp = eta.fxx(x);
      const double a = -s * hp / hh;
      const double ax = -s * (hpp * hh - hp * hp) / (hh * hh);
      const double as = -hp / hh;
      const double cxx = 1.0 / (dx * dx);
      const double css = (a * a + 1.0 / (hh * hh)) / (ds * ds);
      const double cxs = 2 * a / (4 * dx * ds);
      const double cs = (ax + a * as) / (2 * ds);
      const int row = id(i, k);

      auto add = [&](int ii, int kk, double c) {
        if (kk == -1) kk = 1;  // Neumann reflection
        if (kk == ns) {
          rhs[row] -= c * top[((ii % nx) + nx) % nx];
          return;
        }
        trip.emplace_back(row, id(ii, kk), c);
      };
      add(i, k, -2 * cxx - 2 * css);
      add(i - 1, k, cxx);
      add(i + 1, k, cxx);
      add(i, k - 1, css - cs);
      add(i, k + 1, css + cs);
      add(i + 1, k + 1, cxs);
      add(i - 1, k - 1, cxs);
      add(i + 1, k - 1, -cxs);
      add(i - 1, k + 1, -cxs);
    }
  }
  Eigen::SparseMatrix<double> mat(n, n);
  mat.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(mat);
  if (lu.info() != Eigen::Success) throw std::runtime_error("elliptic oracle: factorization failed");
  const Eigen::VectorXd phi = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw std::runtime_error("elliptic oracle: solve failed");

  std::vector<double> out(nx);
  for (int i = 0; i < nx; ++i) {
    const double x = i * dx;
    const double p1 = phi[id(i, ns - 1)], p2 = phi[id(i, ns - 2)];
    const double phs = (3 * top[i] - 4 * p1 + p2) / (2 * ds);
    const double ex = eta.fx(x);
    out[i] = phs * (1 + ex * ex) / (depth + eta.f(x)) - ex * psi.fx(x);
  }
  return out;
}

}  // namespace oracle
