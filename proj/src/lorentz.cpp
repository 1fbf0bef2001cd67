#include "planewave/lorentz.hpp"

#include <cmath>

#include "planewave/errors.hpp"

namespace planewave {

Boost::Boost(const Vec3& beta) : beta_(beta) {
  const double b2 = beta.norm2();
  if (!(b2 < 1.0)) throw DomainError("boost: |beta| must be < 1");
  gamma_ = 1.0 / std::sqrt(1.0 - b2);
}

Event Boost::transform(const Event& v, const Vec3& beta) const {
  const double b2 = beta.norm2();
  if (b2 == 0.0) return v;
  const double bx = beta.dot(v.x);
  Event out;
  out.x0 = gamma_ * (v.x0 - bx);
  out.x = v.x + ((gamma_ - 1.0) * bx / b2 - gamma_ * v.x0) * beta;
  return out;
}

Event Boost::apply(const Event& v) const { return transform(v, beta_); }
Event Boost::inverse(const Event& v) const { return transform(v, -beta_); }

Boost::Fields Boost::transform_fields(const Vec3& e, const Vec3& b) const {
  const double k = gamma_ * gamma_ / (gamma_ + 1.0);
  Fields out;
  out.e = gamma_ * (e + beta_.cross(b)) - k * beta_.dot(e) * beta_;
  out.b = gamma_ * (b - beta_.cross(e)) - k * beta_.dot(b) * beta_;
  return out;
}

Mat3 rotation_between(const Vec3& from, const Vec3& to) {
  const Vec3 f = from.normalized();
  const Vec3 t = to.normalized();
  const double c = f.dot(t);
  Vec3 axis = f.cross(t);
  double s = axis.norm();
  if (s < 1e-12) {
    if (c > 0.0) return Mat3::identity();
    // Antiparallel: any axis orthogonal to f works.
    const Vec3 ref = std::abs(f.x) <= std::abs(f.y) && std::abs(f.x) <= std::abs(f.z) ? Vec3{1, 0, 0}
                     : std::abs(f.y) <= std::abs(f.z)                                 ? Vec3{0, 1, 0}
                                                                                      : Vec3{0, 0, 1};
    axis = f.cross(ref).normalized();
    Mat3 r;
    // R = 2 a a^T - I (rotation by pi).
    const double a[3] = {axis.x, axis.y, axis.z};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = 2.0 * a[i] * a[j] - (i == j ? 1.0 : 0.0);
    return r;
  }
  axis = axis / s;
  // Rodrigues: R = I + sin K + (1 - cos) K^2.
  const double kx = axis.x, ky = axis.y, kz = axis.z;
  const double K[9] = {0, -kz, ky, kz, 0, -kx, -ky, kx, 0};
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double k2 = 0.0;
      for (int m = 0; m < 3; ++m) k2 += K[3 * i + m] * K[3 * m + j];
      r(i, j) = (i == j ? 1.0 : 0.0) + s * K[3 * i + j] + (1.0 - c) * k2;
    }
  }
  return r;
}

}  // namespace planewave
