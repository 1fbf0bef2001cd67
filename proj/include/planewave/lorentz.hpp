#pragma once

#include "planewave/vec.hpp"

namespace planewave {

/// Spacetime event (x0 = c t, x), all in cm.
struct Event {
  double x0 = 0.0;
  Vec3 x;

  friend Event operator+(const Event& a, const Event& b) { return {a.x0 + b.x0, a.x + b.x}; }
  friend Event operator-(const Event& a, const Event& b) { return {a.x0 - b.x0, a.x - b.x}; }
};

/// Pure boost to the frame moving with velocity beta (|beta| < 1) relative to the lab.
class Boost {
 public:
  explicit Boost(const Vec3& beta);

  const Vec3& beta() const { return beta_; }
  double gamma() const { return gamma_; }

  /// Components in the moving frame of a 4-vector given in the original frame.
  Event apply(const Event& v) const;
  Event inverse(const Event& v) const;

  struct Fields {
    Vec3 e, b;
  };
  /// Electromagnetic field seen in the moving frame.
  Fields transform_fields(const Vec3& e, const Vec3& b) const;

 private:
  Event transform(const Event& v, const Vec3& beta) const;

  Vec3 beta_;
  double gamma_;
};

/// Proper rotation R with R * from = to for unit vectors. When from = -to the rotation
/// is by pi about the axis orthogonal to `from` built from the coordinate axis least
/// aligned with it.
Mat3 rotation_between(const Vec3& from, const Vec3& to);

}  // namespace planewave
