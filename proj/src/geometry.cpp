#include "pfmm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>

#include "pfmm/gauss.hpp"

namespace pfmm {

double FourierCurve::radius(double theta) const {
  double r = c0;
  for (const auto& [j, c] : cos_coeffs) r += c * std::cos(j * theta);
  for (const auto& [j, d] : sin_coeffs) r += d * std::sin(j * theta);
  return r;
}

double FourierCurve::radius_d(double theta) const {
  double r = 0.0;
  for (const auto& [j, c] : cos_coeffs) r -= c * j * std::sin(j * theta);
  for (const auto& [j, d] : sin_coeffs) r += d * j * std::cos(j * theta);
  return r;
}

double FourierCurve::radius_dd(double theta) const {
  double r = 0.0;
  for (const auto& [j, c] : cos_coeffs) r -= c * j * j * std::cos(j * theta);
  for (const auto& [j, d] : sin_coeffs) r -= d * j * j * std::sin(j * theta);
  return r;
}

namespace {
inline double traversal_sign(const FourierCurve& c) {
  return c.orientation == CurveOrientation::outer ? 1.0 : -1.0;
}
}  // namespace

Vec2 FourierCurve::position(double t) const {
  const double s = traversal_sign(*this);
  const double th = s * t;
  const double r = radius(th);
  return {center.x + r * std::cos(th), center.y + r * std::sin(th)};
}

Vec2 FourierCurve::velocity(double t) const {
  const double s = traversal_sign(*this);
  const double th = s * t;
  const double r = radius(th), rd = radius_d(th);
  const cplx e{std::cos(th), std::sin(th)};
  const cplx v = s * (cplx(rd, r) * e);
  return from_complex(v);
}

Vec2 FourierCurve::acceleration(double t) const {
  const double s = traversal_sign(*this);
  const double th = s * t;
  const double r = radius(th), rd = radius_d(th), rdd = radius_dd(th);
  const cplx e{std::cos(th), std::sin(th)};
  const cplx a = cplx(rdd - r, 2.0 * rd) * e;  // s^2 = 1
  return from_complex(a);
}

std::pair<int, int> BoundaryGeometry::adjacent_panels(int panel) const {
  const int curve = panels[panel].curve_id;
  int first = panel;
  while (first > 0 && panels[first - 1].curve_id == curve) first--;
  int last = panel;
  const int np = panel_count();
  while (last + 1 < np && panels[last + 1].curve_id == curve) last++;
  const int n = last - first + 1;
  const int k = panel - first;
  return {first + (k + n - 1) % n, first + (k + 1) % n};
}

double BoundaryGeometry::perimeter() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double BoundaryGeometry::max_panel_length() const {
  double m = 0.0;
  for (const auto& p : panels) m = std::max(m, p.arc_length);
  return m;
}

void BoundaryGeometry::build_nn_grid() {
  nn_.cell = std::max(max_panel_length(), 1e-12);
  nn_.origin = box.corner;
  nn_.nx = std::max(1, static_cast<int>(std::ceil(box.side / nn_.cell)));
  nn_.ny = nn_.nx;
  nn_.bins.assign(static_cast<size_t>(nn_.nx) * nn_.ny, {});
  for (int i = 0; i < node_count(); i++) {
    int cx = static_cast<int>((nodes[i].x - nn_.origin.x) / nn_.cell);
    int cy = static_cast<int>((nodes[i].y - nn_.origin.y) / nn_.cell);
    cx = std::clamp(cx, 0, nn_.nx - 1);
    cy = std::clamp(cy, 0, nn_.ny - 1);
    nn_.bins[static_cast<size_t>(cy) * nn_.nx + cx].push_back(i);
  }
}

int BoundaryGeometry::nearest_node(const Vec2& p) const {
  int cx = static_cast<int>((p.x - nn_.origin.x) / nn_.cell);
  int cy = static_cast<int>((p.y - nn_.origin.y) / nn_.cell);
  cx = std::clamp(cx, 0, nn_.nx - 1);
  cy = std::clamp(cy, 0, nn_.ny - 1);
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  const int rmax = std::max(nn_.nx, nn_.ny);
  for (int ring = 0; ring <= rmax; ring++) {
    // Once a candidate exists, one extra ring guarantees correctness.
    if (best >= 0 && (ring - 1) * nn_.cell > std::sqrt(best_d2)) break;
    for (int dy = -ring; dy <= ring; dy++) {
      for (int dx = -ring; dx <= ring; dx++) {
        if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
        const int gx = cx + dx, gy = cy + dy;
        if (gx < 0 || gy < 0 || gx >= nn_.nx || gy >= nn_.ny) continue;
        for (int i : nn_.bins[static_cast<size_t>(gy) * nn_.nx + gx]) {
          const double d2 = (nodes[i] - p).norm2();
          if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
          }
        }
      }
    }
  }
  return best;
}

std::pair<double, double> BoundaryGeometry::foot_point(const Vec2& p,
                                                       int node_hint) const {
  const int pan = panel_of(node_hint);
  const FourierCurve& curve = curves[panels[pan].curve_id];
  const double dt_panel = panels[pan].t_b - panels[pan].t_a;
  const NodalBasis& nb = legendre_basis_16();
  double t = panels[pan].t_a +
             0.5 * dt_panel * (nb.nodes[node_hint % 16] + 1.0);
  for (int iter = 0; iter < 30; iter++) {
    const Vec2 g = curve.position(t);
    const Vec2 v = curve.velocity(t);
    const Vec2 a = curve.acceleration(t);
    const Vec2 d = g - p;
    const double f1 = d.dot(v);
    const double f2 = v.norm2() + d.dot(a);
    if (f2 <= 0.0) break;
    double step = f1 / f2;
    step = std::clamp(step, -dt_panel, dt_panel);
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return {t, (curve.position(t) - p).norm()};
}

LocateResult BoundaryGeometry::locate(const Vec2& p, double tol) const {
  LocateResult res;
  res.nearest_node = nearest_node(p);
  const auto [t, dist] = foot_point(p, res.nearest_node);
  res.distance = dist;
  if (dist <= tol) {
    res.where = LocateResult::Where::on_boundary;
    return res;
  }
  const int pan = panel_of(res.nearest_node);
  const FourierCurve& curve = curves[panels[pan].curve_id];
  const Vec2 g = curve.position(t);
  const Vec2 n = from_complex(cplx(0, -1) *
                              curve.velocity(t).normalized().as_complex());
  const double side = (p - g).dot(n);
  res.where = side < 0.0 ? LocateResult::Where::inside
                         : LocateResult::Where::outside_in_box;
  return res;
}

double BoundaryGeometry::gauss_winding(const Vec2& p) const {
  double s = 0.0;
  for (int j = 0; j < node_count(); j++)
    s += kernel_dny_g(p, nodes[j], normals[j]) * weights[j];
  return s;
}

std::vector<double> BoundaryGeometry::tangential_derivative(
    const std::vector<double>& values) const {
  const NodalBasis& nb = legendre_basis_16();
  std::vector<double> out(values.size());
  for (int pan = 0; pan < panel_count(); pan++) {
    const double scale = 2.0 / (panels[pan].t_b - panels[pan].t_a);
    for (int i = 0; i < 16; i++) {
      double d = 0.0;
      for (int j = 0; j < 16; j++)
        d += nb.diff[i * 16 + j] * values[pan * 16 + j];
      out[pan * 16 + i] = d * scale / speeds[pan * 16 + i];
    }
  }
  return out;
}

double BoundaryGeometry::curvature_at(int node) const {
  const int pan = panel_of(node);
  const FourierCurve& curve = curves[panels[pan].curve_id];
  const NodalBasis& nb = legendre_basis_16();
  const double t = panels[pan].t_a + 0.5 * (panels[pan].t_b - panels[pan].t_a) *
                                         (nb.nodes[node % 16] + 1.0);
  const Vec2 v = curve.velocity(t);
  const Vec2 a = curve.acceleration(t);
  return v.cross(a) / std::pow(v.norm(), 3);
}

namespace {

BoundaryGeometry discretize(const std::vector<FourierCurve>& curves,
                            const std::vector<int>& panel_counts) {
  BoundaryGeometry g;
  g.curves = curves;
  const NodalBasis& nb = legendre_basis_16();
  const GaussRule& gr = gauss_rule(kPanelOrder);
  for (size_t c = 0; c < curves.size(); c++) {
    const int np = panel_counts[c];
    for (int p = 0; p < np; p++) {
      Panel pan;
      pan.curve_id = static_cast<int>(c);
      pan.t_a = 2.0 * kPi * p / np;
      pan.t_b = 2.0 * kPi * (p + 1) / np;
      const double half = 0.5 * (pan.t_b - pan.t_a);
      for (int q = 0; q < kPanelOrder; q++) {
        const double t = pan.t_a + half * (nb.nodes[q] + 1.0);
        const Vec2 pos = curves[c].position(t);
        const Vec2 vel = curves[c].velocity(t);
        const double speed = vel.norm();
        const Vec2 tangent = vel / speed;
        g.nodes.push_back(pos);
        g.tangents.push_back(tangent);
        g.normals.push_back(
            from_complex(cplx(0, -1) * tangent.as_complex()));
        g.speeds.push_back(speed);
        const double w = half * gr.weights[q] * speed;
        g.weights.push_back(w);
        pan.arc_length += w;
      }
      g.panels.push_back(pan);
    }
  }
  return g;
}

// Smooth-rule layer potential of unit density at p (single layer).
double probe_single_layer(const BoundaryGeometry& g, const Vec2& p) {
  double s = 0.0;
  for (int j = 0; j < g.node_count(); j++)
    s += kernel_g(p, g.nodes[j]) * g.weights[j];
  return s;
}

// Compare the smooth rule against adaptive quadrature for one non-adjacent
// panel/target pair: the geometry resolution self-test.
double panel_resolution_error(const BoundaryGeometry& g, int src_panel,
                              const Vec2& target) {
  const Panel& pan = g.panels[src_panel];
  const FourierCurve& curve = g.curves[pan.curve_id];
  double smooth_s = 0.0, smooth_d = 0.0;
  for (int q = 0; q < 16; q++) {
    const int j = src_panel * 16 + q;
    smooth_s += kernel_g(target, g.nodes[j]) * g.weights[j];
    smooth_d += kernel_dny_g(target, g.nodes[j], g.normals[j]) * g.weights[j];
  }
  double exact[2];
  adaptive_quad_1d_vec(
      [&](double t, double* out) {
        const Vec2 y = curve.position(t);
        const Vec2 v = curve.velocity(t);
        const double speed = v.norm();
        const Vec2 n = from_complex(cplx(0, -1) * (v / speed).as_complex());
        out[0] = kernel_g(target, y) * speed;
        out[1] = kernel_dny_g(target, y, n) * speed;
      },
      2, pan.t_a, pan.t_b, 1e-14, exact);
  return std::max(std::abs(smooth_s - exact[0]),
                  std::abs(smooth_d - exact[1]));
}

double resolution_self_test(const BoundaryGeometry& g) {
  double worst = 0.0;
  for (int p = 0; p < g.panel_count(); p++) {
    const auto [prev, next] = g.adjacent_panels(p);
    // Nearest non-adjacent panel on the same curve: two ahead.
    const int q = g.adjacent_panels(next).second;
    if (q == p || q == prev || q == next) continue;
    // Target: node of q closest to panel p's first node.
    const Vec2 ref = g.nodes[p * 16];
    int best = q * 16;
    for (int k = 1; k < 16; k++)
      if ((g.nodes[q * 16 + k] - ref).norm2() <
          (g.nodes[best] - ref).norm2())
        best = q * 16 + k;
    worst = std::max(worst, panel_resolution_error(g, p, g.nodes[best]));
  }
  return worst;
}

}  // namespace

BoundaryGeometry build_geometry(std::vector<FourierCurve> curves,
                                std::optional<int> panels_per_curve,
                                double box_padding, std::optional<Box> box) {
  if (curves.empty()) throw Error("build_geometry: no curves");
  // Radius positivity.
  for (const auto& c : curves) {
    for (int k = 0; k < 4096; k++) {
      const double th = 2.0 * kPi * k / 4096;
      if (c.radius(th) <= 0.0)
        throw NonPositiveRadius("r(theta) <= 0 at theta=" + std::to_string(th));
    }
  }

  std::vector<int> counts(curves.size(), panels_per_curve.value_or(16));
  BoundaryGeometry g = discretize(curves, counts);

  if (!panels_per_curve) {
    // Double panel counts until the perimeter and a probe layer potential
    // self-converge and the non-adjacent smooth rule reaches 1e-12.
    Vec2 centroid{0, 0};
    for (const auto& p : g.nodes) centroid += p;
    centroid = centroid / g.node_count();
    double prev_perim = g.perimeter();
    double prev_probe = probe_single_layer(g, centroid);
    for (int round = 0; round < 7; round++) {
      for (auto& c : counts) c *= 2;
      BoundaryGeometry g2 = discretize(curves, counts);
      const double perim = g2.perimeter();
      const double probe = probe_single_layer(g2, centroid);
      const bool converged = std::abs(perim - prev_perim) < 1e-12 * perim &&
                             std::abs(probe - prev_probe) < 1e-12 &&
                             resolution_self_test(g2) < 1e-12;
      g = std::move(g2);
      prev_perim = perim;
      prev_probe = probe;
      if (converged) break;
      if (round == 6)
        throw Error("build_geometry: auto panel refinement did not converge");
    }
  }
  g.resolution_err = resolution_self_test(g);

  // Curve disjointness: sampled pairwise minimum distance.
  if (curves.size() > 1) {
    std::vector<std::vector<Vec2>> samples(curves.size());
    for (size_t c = 0; c < curves.size(); c++)
      for (int k = 0; k < 512; k++)
        samples[c].push_back(curves[c].position(2.0 * kPi * k / 512));
    double scale = 0.0;
    for (const auto& c : curves) scale = std::max(scale, std::abs(c.c0));
    for (size_t a = 0; a < curves.size(); a++) {
      for (size_t b = a + 1; b < curves.size(); b++) {
        double dmin = std::numeric_limits<double>::infinity();
        for (const auto& pa : samples[a])
          for (const auto& pb : samples[b])
            dmin = std::min(dmin, (pa - pb).norm2());
        if (std::sqrt(dmin) < 1e-6 * scale)
          throw CurveIntersection("curves " + std::to_string(a) + " and " +
                                  std::to_string(b) + " overlap");
      }
    }
  }

  // Enclosing box.
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& p : g.nodes) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  if (box) {
    g.box = *box;
    for (const auto& p : g.nodes)
      if (!(p.x > g.box.corner.x && p.x < g.box.corner.x + g.box.side &&
            p.y > g.box.corner.y && p.y < g.box.corner.y + g.box.side))
        throw Error("build_geometry: explicit box does not contain boundary");
  } else {
    const double diag = std::hypot(x1 - x0, y1 - y0);
    const double pad = box_padding * diag;
    const double side = std::max(x1 - x0, y1 - y0) + 2.0 * pad;
    g.box.corner = {0.5 * (x0 + x1) - 0.5 * side, 0.5 * (y0 + y1) - 0.5 * side};
    g.box.side = side;
  }

  g.build_nn_grid();
  return g;
}

std::vector<FourierCurve> paper_domain_curves() {
  FourierCurve outer;
  outer.c0 = 0.25;
  outer.sin_coeffs[3] = 0.01;
  outer.cos_coeffs[5] = 0.02;
  outer.cos_coeffs[6] = 0.01;
  outer.cos_coeffs[8] = 0.01;
  outer.cos_coeffs[10] = 0.01;
  outer.orientation = CurveOrientation::outer;

  FourierCurve inner;
  inner.c0 = 0.05;
  inner.cos_coeffs[2] = 0.005;
  inner.sin_coeffs[3] = 0.005;
  inner.cos_coeffs[5] = 0.005;
  inner.cos_coeffs[7] = 0.005;
  inner.orientation = CurveOrientation::inner;

  return {outer, inner};
}

OversampledBoundary oversample_boundary(const BoundaryGeometry& geom,
                                        int factor) {
  OversampledBoundary ob;
  ob.factor = factor;
  ob.source_panels = geom.panel_count();
  const NodalBasis& nb = legendre_basis_16();
  const GaussRule& gr = gauss_rule(kPanelOrder);
  for (int pan = 0; pan < geom.panel_count(); pan++) {
    const Panel& p = geom.panels[pan];
    const FourierCurve& curve = geom.curves[p.curve_id];
    const double dt = (p.t_b - p.t_a) / factor;
    for (int s = 0; s < factor; s++) {
      const double a = p.t_a + s * dt;
      for (int q = 0; q < kPanelOrder; q++) {
        const double t = a + 0.5 * dt * (nb.nodes[q] + 1.0);
        const Vec2 vel = curve.velocity(t);
        const double speed = vel.norm();
        const Vec2 tangent = vel / speed;
        ob.nodes.push_back(curve.position(t));
        ob.tangents.push_back(tangent);
        ob.normals.push_back(from_complex(cplx(0, -1) * tangent.as_complex()));
        ob.weights.push_back(0.5 * dt * gr.weights[q] * speed);
      }
    }
  }
  return ob;
}

namespace {
// Interpolation matrix from 16 parent nodes to factor*16 refined nodes; the
// parameter map is affine so one matrix serves every panel.
const std::vector<std::vector<double>>& refine_interp_matrix(int factor) {
  static std::mutex mu;
  static std::map<int, std::vector<std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(factor);
  if (it == cache.end()) {
    const NodalBasis& nb = legendre_basis_16();
    std::vector<std::vector<double>> interp(
        static_cast<size_t>(factor) * 16, std::vector<double>(16));
    std::vector<double> vals(16);
    for (int s = 0; s < factor; s++) {
      for (int q = 0; q < 16; q++) {
        // Reference coordinate of refined node q of subpanel s in [-1,1].
        const double t = -1.0 + (2.0 * s + (nb.nodes[q] + 1.0)) / factor;
        lagrange_values(nb.nodes, nb.bary, t, vals);
        interp[static_cast<size_t>(s) * 16 + q] = vals;
      }
    }
    it = cache.emplace(factor, std::move(interp)).first;
  }
  return it->second;
}
}  // namespace

std::vector<double> OversampledBoundary::interpolate(
    const std::vector<double>& values) const {
  const auto& interp = refine_interp_matrix(factor);
  std::vector<double> out(static_cast<size_t>(source_panels) * factor * 16);
  for (int pan = 0; pan < source_panels; pan++) {
    for (int k = 0; k < factor * 16; k++) {
      double v = 0.0;
      for (int j = 0; j < 16; j++)
        v += interp[k][j] * values[pan * 16 + j];
      out[static_cast<size_t>(pan) * factor * 16 + k] = v;
    }
  }
  return out;
}

}  // namespace pfmm
