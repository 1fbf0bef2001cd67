#pragma once

// CGS-Gaussian constants (CODATA 2018).

namespace planewave {

struct PhysicalConstants {
  double c;    // cm/s
  double e;    // statcoulomb
  double m_e;  // g
  double m_p;  // g
  double erg_per_mev;

  constexpr double electron_rest_energy() const { return m_e * c * c; }
  constexpr double classical_electron_radius() const { return e * e / (m_e * c * c); }
};

// e is sqrt(r_e m_e c^2) with the CODATA r_e, i.e. e_SI / sqrt(4 pi eps0) in Gaussian units.
// (The shortcut e_SI * c / 10 assumes mu0 = 4 pi 1e-7 exactly and is off by ~3e-10.)
inline constexpr PhysicalConstants kCgs{
    .c = 2.99792458e10,
    .e = 4.803204713873541e-10,
    .m_e = 9.1093837015e-28,
    .m_p = 1.67262192369e-24,
    .erg_per_mev = 1.602176634e-6,
};

/// Reference value of r_e quoted by CODATA, used to cross-check the derived one.
inline constexpr double kCodataElectronRadius = 2.8179403262e-13;  // cm

inline constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace planewave
