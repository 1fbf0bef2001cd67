#include "planewave/kinematics.hpp"

#include <cmath>
#include <utility>

#include "planewave/errors.hpp"

namespace planewave {

Species::Species(double mass, double charge, std::string label)
    : mass_(mass), charge_(charge), label_(std::move(label)) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw DomainError("species '" + label_ + "': mass must be positive");
  }
  if (charge == 0.0 || !std::isfinite(charge)) {
    throw DomainError("species '" + label_ + "': charge must be nonzero");
  }
}

Species Species::electron() { return {kCgs.m_e, -kCgs.e, "electron"}; }
Species Species::positron() { return {kCgs.m_e, kCgs.e, "positron"}; }
Species Species::proton() { return {kCgs.m_p, kCgs.e, "proton"}; }

double KinematicState::mass_shell_residual() const {
  const double g2 = gamma * gamma;
  return (g2 - u_perp.norm2() - u_z * u_z - 1.0) / g2;
}

KinematicState rest_state() { return {}; }

KinematicState state_from_s(const Vec2& u_perp, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("state_from_s: s must be positive and finite");
  }
  const double p2 = u_perp.norm2();
  KinematicState st;
  st.u_perp = u_perp;
  st.s = s;
  st.gamma = (1.0 + p2 + s * s) / (2.0 * s);
  st.u_z = (1.0 + p2 - s * s) / (2.0 * s);
  return st;
}

KinematicState state_from_momentum(const Vec3& u) {
  KinematicState st;
  st.u_perp = u.xy();
  st.u_z = u.z;
  st.gamma = std::sqrt(1.0 + u.norm2());
  const double transverse = 1.0 + st.u_perp.norm2();
  // gamma - u_z loses all digits when u_z >> 1; use (gamma^2 - u_z^2)/(gamma + u_z).
  st.s = u.z > 0.0 ? transverse / (st.gamma + u.z) : st.gamma - u.z;
  return st;
}

Vec2 transverse_momentum(const Species& species, const Vec2& a_perp) {
  return -species.coupling() * a_perp;
}

}  // namespace planewave
