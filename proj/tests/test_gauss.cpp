#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pfmm/gauss.hpp"

using namespace pfmm;

TEST_CASE("gauss rule integrates polynomials exactly") {
  const GaussRule& gr = gauss_rule(16);
  double s = 0.0;
  for (int q = 0; q < 16; q++) s += gr.weights[q];
  CHECK(std::abs(s - 2.0) < 1e-14);
  // degree 31 monomial t^30 on [-1,1]: 2/31
  double m = 0.0;
  for (int q = 0; q < 16; q++)
    m += gr.weights[q] * std::pow(gr.nodes[q], 30);
  CHECK(std::abs(m - 2.0 / 31.0) < 1e-14);
}

TEST_CASE("spectral differentiation on legendre nodes") {
  const NodalBasis& nb = legendre_basis_16();
  // f = sin(t), f' = cos(t)
  std::vector<double> f(16);
  for (int i = 0; i < 16; i++) f[i] = std::sin(nb.nodes[i]);
  for (int i = 0; i < 16; i++) {
    double d = 0.0;
    for (int j = 0; j < 16; j++) d += nb.diff[i * 16 + j] * f[j];
    CHECK(std::abs(d - std::cos(nb.nodes[i])) < 1e-12);
  }
}

TEST_CASE("spectral antiderivative on legendre nodes") {
  const NodalBasis& nb = legendre_basis_16();
  // f = cos(t), int_{-1}^{t} f = sin(t) - sin(-1)
  std::vector<double> f(16);
  for (int i = 0; i < 16; i++) f[i] = std::cos(nb.nodes[i]);
  for (int i = 0; i < 16; i++) {
    double v = 0.0;
    for (int j = 0; j < 16; j++) v += nb.antideriv[i * 16 + j] * f[j];
    CHECK(std::abs(v - (std::sin(nb.nodes[i]) - std::sin(-1.0))) < 1e-12);
  }
}

TEST_CASE("leaf basis reproduces bilinear functions and sums to one") {
  const LeafBasis& lb = leaf_basis();
  double wsum = 0.0;
  for (double w : lb.quad_w) wsum += w;
  CHECK(std::abs(wsum - 1.0) < 1e-14);

  // interpolate f(x,y) = 2x - 3y + xy at an off-grid point
  auto f = [](double x, double y) { return 2 * x - 3 * y + x * y; };
  std::array<double, 4> vx, vy;
  lb.values1d(0.173, vx);
  lb.values1d(-0.311, vy);
  double val = 0.0;
  for (int iy = 0; iy < 4; iy++)
    for (int ix = 0; ix < 4; ix++)
      val += vx[ix] * vy[iy] * f(lb.nodes1d[ix], lb.nodes1d[iy]);
  CHECK(std::abs(val - f(0.173, -0.311)) < 1e-14);
}

TEST_CASE("adaptive quadrature handles log singularity") {
  // int_0^1 log(t) dt = -1
  const double v = adaptive_quad_1d(
      [](double t) { return std::log(t > 0 ? t : 1e-300); }, 0.0, 1.0, 1e-13);
  CHECK(std::abs(v + 1.0) < 1e-12);

  // 2d: int over [0,1]^2 of log(sqrt(x^2+y^2)) dx dy = log(2)/2 + pi/4 - 3/2
  const double v2 = adaptive_quad_2d(
      [](double x, double y) { return 0.5 * std::log(x * x + y * y); }, 0.0,
      1.0, 0.0, 1.0, 1e-12);
  const double exact = 0.5 * std::log(2.0) + 0.25 * kPi - 1.5;
  CHECK(std::abs(v2 - exact) < 1e-10);
}
