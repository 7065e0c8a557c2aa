#include "pfmm/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace pfmm {

namespace {

GaussRule compute_gauss(int n) {
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; i++) {
    // Chebyshev initial guess, Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; iter++) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; k++) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return r;
}

std::vector<double> bary_weights(const std::vector<double>& nodes) {
  const int n = static_cast<int>(nodes.size());
  std::vector<double> w(n, 1.0);
  for (int i = 0; i < n; i++) {
    for (int j = 0; j < n; j++) {
      if (j != i) w[i] /= (nodes[i] - nodes[j]);
    }
  }
  return w;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
  return it->second;
}

const NodalBasis& legendre_basis_16() {
  static const NodalBasis basis = [] {
    NodalBasis b;
    b.n = kPanelOrder;
    const GaussRule& gr = gauss_rule(kPanelOrder);
    b.nodes = gr.nodes;
    b.bary = bary_weights(b.nodes);
    const int n = b.n;
    b.diff.assign(n * n, 0.0);
    // D[i][j] = l_j'(t_i), standard barycentric formulas.
    for (int i = 0; i < n; i++) {
      double diag = 0.0;
      for (int j = 0; j < n; j++) {
        if (j == i) continue;
        const double d = (b.bary[j] / b.bary[i]) / (b.nodes[i] - b.nodes[j]);
        b.diff[i * n + j] = d;
        diag -= d;
      }
      b.diff[i * n + i] = diag;
    }
    // Q[i][j] = int_{-1}^{t_i} l_j dt, by per-interval Gauss quadrature of
    // the Lagrange basis (exact: degree 15 against 16-point Gauss).
    b.antideriv.assign(n * n, 0.0);
    std::vector<double> vals(n);
    for (int i = 0; i < n; i++) {
      const double a = -1.0, t = b.nodes[i];
      const GaussRule& sub = gauss_rule(16);
      for (int q = 0; q < 16; q++) {
        const double x = 0.5 * (a + t) + 0.5 * (t - a) * sub.nodes[q];
        const double w = 0.5 * (t - a) * sub.weights[q];
        lagrange_values(b.nodes, b.bary, x, vals);
        for (int j = 0; j < n; j++) b.antideriv[i * n + j] += w * vals[j];
      }
    }
    return b;
  }();
  return basis;
}

void lagrange_values(const std::vector<double>& nodes,
                     const std::vector<double>& bary, double t,
                     std::vector<double>& out) {
  const int n = static_cast<int>(nodes.size());
  out.assign(n, 0.0);
  for (int j = 0; j < n; j++) {
    if (t == nodes[j]) {
      out[j] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < n; j++) {
    out[j] = bary[j] / (t - nodes[j]);
    denom += out[j];
  }
  for (int j = 0; j < n; j++) out[j] /= denom;
}

void LeafBasis::values1d(double t, std::array<double, 4>& v) const {
  for (int j = 0; j < 4; j++) {
    if (t == nodes1d[j]) {
      v.fill(0.0);
      v[j] = 1.0;
      return;
    }
  }
  double denom = 0.0;
  for (int j = 0; j < 4; j++) {
    v[j] = bary1d[j] / (t - nodes1d[j]);
    denom += v[j];
  }
  for (int j = 0; j < 4; j++) v[j] /= denom;
}

void LeafBasis::deriv1d(double t, std::array<double, 4>& v) const {
  // Differentiate the explicit cubic Lagrange polynomials; n=4 is small
  // enough for the direct product-rule form.
  for (int j = 0; j < 4; j++) {
    double sum = 0.0;
    for (int k = 0; k < 4; k++) {
      if (k == j) continue;
      double prod = 1.0;
      for (int m = 0; m < 4; m++) {
        if (m == j || m == k) continue;
        prod *= (t - nodes1d[m]) / (nodes1d[j] - nodes1d[m]);
      }
      sum += prod / (nodes1d[j] - nodes1d[k]);
    }
    v[j] = sum;
  }
}

const LeafBasis& leaf_basis() {
  static const LeafBasis basis = [] {
    LeafBasis b;
    // Chebyshev roots of T_4 scaled to [-1/2, 1/2], increasing order.
    for (int k = 0; k < 4; k++)
      b.nodes1d[k] = 0.5 * std::cos(kPi * (2 * (4 - k) - 1) / 8.0);
    std::vector<double> nodes(b.nodes1d.begin(), b.nodes1d.end());
    const auto w = bary_weights(nodes);
    for (int k = 0; k < 4; k++) b.bary1d[k] = w[k];
    // 1d quadrature weights: int_{-1/2}^{1/2} l_j dt via 8-point Gauss.
    std::array<double, 4> w1d{};
    const GaussRule& gr = gauss_rule(8);
    for (int q = 0; q < 8; q++) {
      const double x = 0.5 * gr.nodes[q];
      const double wq = 0.5 * gr.weights[q];
      std::array<double, 4> v;
      b.values1d(x, v);
      for (int j = 0; j < 4; j++) w1d[j] += wq * v[j];
    }
    for (int iy = 0; iy < 4; iy++)
      for (int ix = 0; ix < 4; ix++)
        b.quad_w[leaf_index(ix, iy)] = w1d[ix] * w1d[iy];
    return b;
  }();
  return basis;
}

// ---------------------------------------------------------------------------
// Adaptive quadrature
// ---------------------------------------------------------------------------

namespace {

void gauss_panel_vec(const std::function<void(double, double*)>& f, int dim,
                     double a, double b, int n, std::vector<double>& tmp,
                     double* out) {
  const GaussRule& gr = gauss_rule(n);
  for (int k = 0; k < dim; k++) out[k] = 0.0;
  for (int q = 0; q < n; q++) {
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * gr.nodes[q];
    const double w = 0.5 * (b - a) * gr.weights[q];
    f(x, tmp.data());
    for (int k = 0; k < dim; k++) out[k] += w * tmp[k];
  }
}

void adapt1d_rec(const std::function<void(double, double*)>& f, int dim,
                 double a, double b, double tol, double* result, int depth,
                 int max_depth, std::vector<double>& tmp,
                 std::vector<double>& coarse, std::vector<double>& fine) {
  gauss_panel_vec(f, dim, a, b, 15, tmp, coarse.data());
  std::vector<double> left(dim), right(dim);
  const double m = 0.5 * (a + b);
  gauss_panel_vec(f, dim, a, m, 15, tmp, left.data());
  gauss_panel_vec(f, dim, m, b, 15, tmp, right.data());
  double err = 0.0;
  for (int k = 0; k < dim; k++) {
    fine[k] = left[k] + right[k];
    err = std::max(err, std::abs(fine[k] - coarse[k]));
  }
  if (err <= tol || depth >= max_depth) {
    if (err > tol && depth >= max_depth)
      throw QuadratureNonConvergent("adaptive 1d quadrature at depth limit");
    for (int k = 0; k < dim; k++) result[k] += fine[k];
    return;
  }
  std::vector<double> c2(dim), f2(dim);
  // Flat per-panel tolerance: near an endpoint singularity the local error
  // and a split tolerance would shrink at the same rate and never meet.
  adapt1d_rec(f, dim, a, m, tol, result, depth + 1, max_depth, tmp, c2, f2);
  adapt1d_rec(f, dim, m, b, tol, result, depth + 1, max_depth, tmp, c2, f2);
}

}  // namespace

void adaptive_quad_1d_vec(const std::function<void(double, double*)>& f,
                          int dim, double a, double b, double tol,
                          double* result, int max_depth) {
  for (int k = 0; k < dim; k++) result[k] = 0.0;
  std::vector<double> tmp(dim), coarse(dim), fine(dim);
  adapt1d_rec(f, dim, a, b, tol, result, 0, max_depth, tmp, coarse, fine);
}

double adaptive_quad_1d(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  double res = 0.0;
  adaptive_quad_1d_vec([&](double t, double* out) { out[0] = f(t); }, 1, a, b,
                       tol, &res, max_depth);
  return res;
}

namespace {

void gauss_cell_vec(const std::function<void(double, double, double*)>& f,
                    int dim, double x0, double x1, double y0, double y1, int n,
                    std::vector<double>& tmp, double* out) {
  const GaussRule& gr = gauss_rule(n);
  for (int k = 0; k < dim; k++) out[k] = 0.0;
  for (int qx = 0; qx < n; qx++) {
    const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * gr.nodes[qx];
    const double wx = 0.5 * (x1 - x0) * gr.weights[qx];
    for (int qy = 0; qy < n; qy++) {
      const double y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * gr.nodes[qy];
      const double w = wx * 0.5 * (y1 - y0) * gr.weights[qy];
      f(x, y, tmp.data());
      for (int k = 0; k < dim; k++) out[k] += w * tmp[k];
    }
  }
}

void adapt2d_rec(const std::function<void(double, double, double*)>& f,
                 int dim, double x0, double x1, double y0, double y1,
                 double tol, double* result, int depth, int max_depth,
                 std::vector<double>& tmp) {
  std::vector<double> coarse(dim), fine(dim, 0.0), sub(dim);
  gauss_cell_vec(f, dim, x0, x1, y0, y1, 10, tmp, coarse.data());
  const double mx = 0.5 * (x0 + x1), my = 0.5 * (y0 + y1);
  const double xs[3] = {x0, mx, x1}, ys[3] = {y0, my, y1};
  for (int i = 0; i < 2; i++) {
    for (int j = 0; j < 2; j++) {
      gauss_cell_vec(f, dim, xs[i], xs[i + 1], ys[j], ys[j + 1], 10, tmp,
                     sub.data());
      for (int k = 0; k < dim; k++) fine[k] += sub[k];
    }
  }
  double err = 0.0;
  for (int k = 0; k < dim; k++)
    err = std::max(err, std::abs(fine[k] - coarse[k]));
  if (err <= tol || depth >= max_depth) {
    for (int k = 0; k < dim; k++) result[k] += fine[k];
    return;
  }
  for (int i = 0; i < 2; i++)
    for (int j = 0; j < 2; j++)
      adapt2d_rec(f, dim, xs[i], xs[i + 1], ys[j], ys[j + 1], 0.5 * tol,
                  result, depth + 1, max_depth, tmp);
}

}  // namespace

void adaptive_quad_2d_vec(const std::function<void(double, double, double*)>& f,
                          int dim, double x0, double x1, double y0, double y1,
                          double tol, double* result, int max_depth) {
  for (int k = 0; k < dim; k++) result[k] = 0.0;
  std::vector<double> tmp(dim);
  adapt2d_rec(f, dim, x0, x1, y0, y1, tol, result, 0, max_depth, tmp);
}

double adaptive_quad_2d(const std::function<double(double, double)>& f,
                        double x0, double x1, double y0, double y1, double tol,
                        int max_depth) {
  double res = 0.0;
  adaptive_quad_2d_vec(
      [&](double x, double y, double* out) { out[0] = f(x, y); }, 1, x0, x1,
      y0, y1, tol, &res, max_depth);
  return res;
}

}  // namespace pfmm
