#ifndef PFMM_GEOMETRY_HPP
#define PFMM_GEOMETRY_HPP

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pfmm/common.hpp"

namespace pfmm {

enum class CurveOrientation { outer, inner };

// Closed curve in polar form about a local origin:
//   r(theta) = c0 + sum_j (c_j cos(j theta) + d_j sin(j theta)) > 0.
// Traversal is chosen so the normal n = -i * tangent points away from the
// domain: counterclockwise for the outer curve, clockwise for inner curves.
struct FourierCurve {
  double c0 = 1.0;
  std::map<int, double> cos_coeffs;  // j -> c_j
  std::map<int, double> sin_coeffs;  // j -> d_j
  Vec2 center;
  CurveOrientation orientation = CurveOrientation::outer;

  double radius(double theta) const;
  double radius_d(double theta) const;
  double radius_dd(double theta) const;

  // Position and parameter derivatives at traversal parameter t in [0, 2pi).
  Vec2 position(double t) const;
  Vec2 velocity(double t) const;       // d/dt position
  Vec2 acceleration(double t) const;   // d2/dt2 position
};

struct Panel {
  int curve_id = 0;
  double t_a = 0.0, t_b = 0.0;  // traversal-parameter interval
  double arc_length = 0.0;      // h_i
};

struct LocateResult {
  enum class Where { inside, outside_in_box, on_boundary } where;
  double distance = 0.0;
  int nearest_node = -1;
};

class BoundaryGeometry {
 public:
  std::vector<FourierCurve> curves;
  std::vector<Panel> panels;
  Box box;

  // Flattened per-node data, 16 nodes per panel, node i on panel i/16.
  std::vector<Vec2> nodes;
  std::vector<Vec2> normals;
  std::vector<Vec2> tangents;
  std::vector<double> speeds;   // |d position / dt|
  std::vector<double> weights;  // smooth quadrature weights (arc length)

  double resolution_err = 0.0;  // non-adjacent panel smooth-rule self-test

  int node_count() const { return static_cast<int>(nodes.size()); }
  int panel_count() const { return static_cast<int>(panels.size()); }
  int panel_of(int node) const { return node / 16; }
  // Previous/next panel on the same curve (wrapping).
  std::pair<int, int> adjacent_panels(int panel) const;
  double perimeter() const;
  double max_panel_length() const;

  int nearest_node(const Vec2& p) const;
  // Foot of the perpendicular from p onto the curve carrying node hint;
  // returns (curve parameter, distance).
  std::pair<double, double> foot_point(const Vec2& p, int node_hint) const;

  LocateResult locate(const Vec2& p, double tol = 1e-12) const;

  // Discretized double layer of unit density (smooth rule): approximately
  // -1 inside Omega, 0 outside; accurate away from the boundary band.
  double gauss_winding(const Vec2& p) const;

  // Per-panel spectral derivative with respect to arc length.
  std::vector<double> tangential_derivative(
      const std::vector<double>& values) const;

  // signed curvature at node (convention: ccw unit circle has kappa = +1)
  double curvature_at(int node) const;

 private:
  friend BoundaryGeometry build_geometry(std::vector<FourierCurve>,
                                         std::optional<int>, double,
                                         std::optional<Box>);
  struct NnGrid {
    Vec2 origin;
    double cell = 1.0;
    int nx = 0, ny = 0;
    std::vector<std::vector<int>> bins;
  };
  NnGrid nn_;
  void build_nn_grid();
};

// Discretizes the curves into panels. If panels_per_curve is empty, panel
// counts start at 16 per curve and double until the perimeter and a probe
// layer potential self-converge to 1e-12. box_padding is the fraction of the
// boundary bounding-box diagonal added around it; an explicit box overrides
// the padding rule.
BoundaryGeometry build_geometry(std::vector<FourierCurve> curves,
                                std::optional<int> panels_per_curve,
                                double box_padding = 0.10,
                                std::optional<Box> box = std::nullopt);

// The two-curve domain used throughout the experiments.
std::vector<FourierCurve> paper_domain_curves();

// Boundary nodes refined 4x in parameter (for accurate smooth-rule
// evaluation of layer potentials at moderately close targets).
struct OversampledBoundary {
  std::vector<Vec2> nodes;
  std::vector<Vec2> normals;
  std::vector<Vec2> tangents;
  std::vector<double> weights;
  // Interpolate per-node density values from the source geometry onto the
  // oversampled nodes (panelwise degree-15 interpolation).
  std::vector<double> interpolate(const std::vector<double>& values) const;
  int factor = 4;
  int source_panels = 0;
};

OversampledBoundary oversample_boundary(const BoundaryGeometry& geom,
                                        int factor = 4);

}  // namespace pfmm

#endif  // PFMM_GEOMETRY_HPP
