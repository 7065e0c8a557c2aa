#ifndef PFMM_GAUSS_HPP
#define PFMM_GAUSS_HPP

#include <array>
#include <functional>
#include <vector>

#include "pfmm/common.hpp"

namespace pfmm {

// Gauss-Legendre rule on [-1,1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes/weights computed by Newton iteration on P_n; cached per order.
const GaussRule& gauss_rule(int n);

inline constexpr int kPanelOrder = 16;

// Data for degree-(n-1) interpolation on the n Gauss-Legendre nodes:
// barycentric weights, spectral differentiation matrix D (d/dt on [-1,1])
// and spectral antiderivative matrix Q with (Q f)_i = int_{-1}^{t_i} f dt.
struct NodalBasis {
  int n = 0;
  std::vector<double> nodes;       // n
  std::vector<double> bary;        // n barycentric weights
  std::vector<double> diff;        // n*n row-major, D[i][j]
  std::vector<double> antideriv;   // n*n row-major, Q[i][j]
};

const NodalBasis& legendre_basis_16();

// Evaluate Lagrange basis values at t for arbitrary nodal basis (barycentric).
void lagrange_values(const std::vector<double>& nodes,
                     const std::vector<double>& bary, double t,
                     std::vector<double>& out);

// ---------------------------------------------------------------------------
// 4x4 Chebyshev leaf grid on the reference square [-1/2,1/2]^2.
// ---------------------------------------------------------------------------
struct LeafBasis {
  std::array<double, 4> nodes1d;    // Chebyshev roots scaled to [-1/2,1/2]
  std::array<double, 4> bary1d;     // barycentric weights
  std::array<double, 16> quad_w;    // int over square of tensor Lagrange basis
  // 1d basis values at t in [-1/2,1/2]
  void values1d(double t, std::array<double, 4>& v) const;
  // 1d derivative values at t
  void deriv1d(double t, std::array<double, 4>& v) const;
};

const LeafBasis& leaf_basis();

// Tensor index convention for 16 leaf values: s = 4*iy + ix.
inline int leaf_index(int ix, int iy) { return 4 * iy + ix; }

// ---------------------------------------------------------------------------
// Adaptive quadrature (used for oracles and table generation).
// ---------------------------------------------------------------------------

// 1D adaptive Gauss quadrature of f over [a,b] to absolute tolerance tol.
// Throws QuadratureNonConvergent if recursion exceeds max_depth.
double adaptive_quad_1d(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth = 60);

// 1D adaptive quadrature of a vector-valued integrand (shared evaluation
// points). f(t, out) accumulates nothing; it writes the integrand values.
void adaptive_quad_1d_vec(
    const std::function<void(double, double*)>& f, int dim, double a, double b,
    double tol, double* result, int max_depth = 60);

// 2D adaptive quadrature of a vector-valued integrand over a rectangle,
// recursive quartering with a tensor Gauss rule per cell.
void adaptive_quad_2d_vec(
    const std::function<void(double, double, double*)>& f, int dim, double x0,
    double x1, double y0, double y1, double tol, double* result,
    int max_depth = 40);

double adaptive_quad_2d(const std::function<double(double, double)>& f,
                        double x0, double x1, double y0, double y1, double tol,
                        int max_depth = 40);

}  // namespace pfmm

#endif  // PFMM_GAUSS_HPP
