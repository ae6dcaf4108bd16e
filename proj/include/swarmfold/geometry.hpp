#pragma once

#include <cmath>
#include <vector>

namespace swarmfold {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
  Vec2& operator/=(double s) { x /= s; y /= s; return *this; }

  friend Vec2 operator+(Vec2 a, Vec2 b) { return a += b; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return a -= b; }
  friend Vec2 operator*(Vec2 a, double s) { return a *= s; }
  friend Vec2 operator*(double s, Vec2 a) { return a *= s; }
  friend Vec2 operator/(Vec2 a, double s) { return a /= s; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double squared_norm(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Row-major 2x2 matrix.
struct Mat2 {
  double a00 = 1.0, a01 = 0.0;
  double a10 = 0.0, a11 = 1.0;

  static Mat2 identity() { return {}; }
  static Mat2 rotation(double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return {c, -s, s, c};
  }

  Vec2 operator*(Vec2 v) const { return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y}; }
  Mat2 operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
  }
  Mat2 transposed() const { return {a00, a10, a01, a11}; }
  double determinant() const { return a00 * a11 - a01 * a10; }
  bool is_identity() const { return a00 == 1.0 && a01 == 0.0 && a10 == 0.0 && a11 == 1.0; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

// True when RᵀR = I and det R = +1 within tol.
bool is_rotation(const Mat2& m, double tol = 1e-12);

// Stacked positions of all agents at one time step.
using Configuration = std::vector<Vec2>;

// Rectangular domain [-L, L) x [-H, H), optionally periodic.
struct Boundary {
  double half_width = 8.0;
  double half_height = 5.0;
  bool periodic = true;

  // Shortest periodic representative of a displacement (identity when not periodic).
  Vec2 minimum_image(Vec2 d) const;
  Vec2 wrap(Vec2 p) const;
  double distance(Vec2 a, Vec2 b) const { return norm(minimum_image(b - a)); }
};

}  // namespace swarmfold
