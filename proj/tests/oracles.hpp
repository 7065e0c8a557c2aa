// Test-only oracles, independent of the implementation paths they check.
#ifndef PFMM_TESTS_ORACLES_HPP
#define PFMM_TESTS_ORACLES_HPP

#include <cmath>
#include <vector>

#include "pfmm/common.hpp"
#include "pfmm/gauss.hpp"
#include "pfmm/geometry.hpp"

namespace oracles {

using pfmm::Vec2;

// Arc length of a Fourier curve by adaptive quadrature of |dx/dtheta|.
inline double curve_arc_length(const pfmm::FourierCurve& c) {
  return pfmm::adaptive_quad_1d(
      [&](double t) { return c.velocity(t).norm(); }, 0.0, 2.0 * pfmm::kPi,
      1e-14);
}

// Point-in-domain by ray casting against a dense polygonal sampling of the
// curves (counts crossings of a horizontal ray; inside Omega means inside
// the outer curve and outside every inner curve).
inline bool ray_cast_inside(const std::vector<pfmm::FourierCurve>& curves,
                            const Vec2& p, int samples = 8192) {
  int crossings_outer = 0;
  bool in_any_inner = false;
  for (const auto& c : curves) {
    int crossings = 0;
    Vec2 prev = c.position(0.0);
    for (int k = 1; k <= samples; k++) {
      const Vec2 cur = c.position(2.0 * pfmm::kPi * k / samples);
      if ((prev.y > p.y) != (cur.y > p.y)) {
        const double xint =
            prev.x + (p.y - prev.y) * (cur.x - prev.x) / (cur.y - prev.y);
        if (xint > p.x) crossings++;
      }
      prev = cur;
    }
    if (c.orientation == pfmm::CurveOrientation::outer) {
      crossings_outer = crossings;
    } else if (crossings % 2 == 1) {
      in_any_inner = true;
    }
  }
  return crossings_outer % 2 == 1 && !in_any_inner;
}

// Single/double layer potential of a nodal density at an arbitrary target by
// deep adaptive quadrature over every panel (slow, near-singular capable).
// Density on each panel is the degree-15 interpolant of its nodal values.
inline void layer_potential_adaptive(const pfmm::BoundaryGeometry& g,
                                     const std::vector<double>& density,
                                     const Vec2& target, double* single,
                                     double* dbl, double tol = 1e-13) {
  const pfmm::NodalBasis& nb = pfmm::legendre_basis_16();
  double acc[2] = {0.0, 0.0};
  std::vector<double> vals(16);
  for (int pan = 0; pan < g.panel_count(); pan++) {
    const auto& panel = g.panels[pan];
    const auto& curve = g.curves[panel.curve_id];
    double part[2];
    pfmm::adaptive_quad_1d_vec(
        [&](double t, double* out) {
          const Vec2 y = curve.position(t);
          const Vec2 v = curve.velocity(t);
          const double speed = v.norm();
          const Vec2 n = pfmm::from_complex(pfmm::cplx(0, -1) *
                                            (v / speed).as_complex());
          // reference coordinate in [-1,1]
          const double r = 2.0 * (t - panel.t_a) / (panel.t_b - panel.t_a) - 1.0;
          pfmm::lagrange_values(nb.nodes, nb.bary, r, vals);
          double mu = 0.0;
          for (int j = 0; j < 16; j++) mu += vals[j] * density[pan * 16 + j];
          out[0] = pfmm::kernel_g(target, y) * mu * speed;
          out[1] = pfmm::kernel_dny_g(target, y, n) * mu * speed;
        },
        2, panel.t_a, panel.t_b, tol, part, 70);
    acc[0] += part[0];
    acc[1] += part[1];
  }
  if (single) *single = acc[0];
  if (dbl) *dbl = acc[1];
}

}  // namespace oracles

#endif  // PFMM_TESTS_ORACLES_HPP
