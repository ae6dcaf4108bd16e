#include "swarmfold/geometry.hpp"

namespace swarmfold {

namespace {

double wrap_coordinate(double v, double half) {
  const double period = 2.0 * half;
  double w = v - period * std::floor((v + half) / period);
  // floor can land one ulp outside the half-open interval
  if (w >= half) w -= period;
  if (w < -half) w += period;
  return w;
}

double image_coordinate(double d, double half) {
  const double period = 2.0 * half;
  return d - period * std::round(d / period);
}

}  // namespace

bool is_rotation(const Mat2& m, double tol) {
  const Mat2 g = m.transposed() * m;
  return std::abs(g.a00 - 1.0) <= tol && std::abs(g.a11 - 1.0) <= tol &&
         std::abs(g.a01) <= tol && std::abs(g.a10) <= tol &&
         std::abs(m.determinant() - 1.0) <= tol;
}

Vec2 Boundary::minimum_image(Vec2 d) const {
  if (!periodic) return d;
  return {image_coordinate(d.x, half_width), image_coordinate(d.y, half_height)};
}

Vec2 Boundary::wrap(Vec2 p) const {
  if (!periodic) return p;
  return {wrap_coordinate(p.x, half_width), wrap_coordinate(p.y, half_height)};
}

}  // namespace swarmfold
