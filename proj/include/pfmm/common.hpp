#ifndef PFMM_COMMON_HPP
#define PFMM_COMMON_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pfmm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Small 2-vector. Value type used for points, normals, tangents, gradients.
// ---------------------------------------------------------------------------
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  Vec2 normalized() const {
    const double n = norm();
    return {x / n, y / n};
  }
  cplx as_complex() const { return {x, y}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline Vec2 from_complex(cplx z) { return {z.real(), z.imag()}; }

// Axis-aligned square, lower-left corner + side length.
struct Box {
  Vec2 corner;
  double side = 1.0;

  Vec2 center() const { return {corner.x + 0.5 * side, corner.y + 0.5 * side}; }
  bool contains(const Vec2& p) const {
    return p.x >= corner.x && p.x <= corner.x + side && p.y >= corner.y &&
           p.y <= corner.y + side;
  }
};

// ---------------------------------------------------------------------------
// Free-space kernel, fixed sign convention used throughout:
//   G(x,y) = -log|x-y| / (2 pi)
// ---------------------------------------------------------------------------
inline double kernel_g(const Vec2& x, const Vec2& y) {
  return -std::log((x - y).norm()) / (2.0 * kPi);
}

// grad_x G(x,y) = -(x-y)/(2 pi |x-y|^2)
inline Vec2 kernel_grad_g(const Vec2& x, const Vec2& y) {
  const Vec2 r = x - y;
  const double s = -1.0 / (2.0 * kPi * r.norm2());
  return {s * r.x, s * r.y};
}

// d/dn_y G(x,y) = -(n_y . (y-x)) / (2 pi |x-y|^2)   (double layer kernel)
inline double kernel_dny_g(const Vec2& x, const Vec2& y, const Vec2& ny) {
  const Vec2 r = y - x;
  return -ny.dot(r) / (2.0 * kPi * r.norm2());
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PFMM_DEFINE_ERROR(NAME)                                     \
  class NAME : public Error {                                       \
   public:                                                          \
    explicit NAME(const std::string& what) : Error(#NAME ": " + what) {} \
  }

PFMM_DEFINE_ERROR(NonPositiveRadius);
PFMM_DEFINE_ERROR(CurveIntersection);
PFMM_DEFINE_ERROR(MaxLevelExceeded);
PFMM_DEFINE_ERROR(PointOutsideLeaf);
PFMM_DEFINE_ERROR(PointOutsideDomain);
PFMM_DEFINE_ERROR(PrecisionUnachievable);
PFMM_DEFINE_ERROR(QuadratureNonConvergent);
PFMM_DEFINE_ERROR(SingularMatrix);
PFMM_DEFINE_ERROR(SolveFailed);
PFMM_DEFINE_ERROR(CenterCollision);
PFMM_DEFINE_ERROR(WrongSide);
PFMM_DEFINE_ERROR(ConfigError);

#undef PFMM_DEFINE_ERROR

}  // namespace pfmm

#endif  // PFMM_COMMON_HPP
