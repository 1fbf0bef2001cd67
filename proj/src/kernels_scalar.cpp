#include <cstddef>

#include "planewave/kernels.hpp"

namespace planewave::kernels::scalar {

void recover_from_s(const SInputs& in, const KinematicsOut& out) {
  const std::size_t n = in.s.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double p2 = in.ux[i] * in.ux[i] + in.uy[i] * in.uy[i];
    const double s = in.s[i];
    const double s2 = s * s;
    const double two_s = s + s;
    const double gamma = ((1.0 + p2) + s2) / two_s;
    const double uz = ((1.0 + p2) - s2) / two_s;
    out.gamma[i] = gamma;
    out.uz[i] = uz;
    out.beta_x[i] = in.ux[i] / gamma;
    out.beta_y[i] = in.uy[i] / gamma;
    out.beta_z[i] = uz / gamma;
  }
}

void correction_weight(std::span<const double> uz0, std::span<const double> em1,
                       std::span<double> g) {
  const std::size_t n = uz0.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = 1.0 + (uz0[i] + uz0[i]);
    g[i] = (a * em1[i]) / ((a + 1.0) + em1[i]);
  }
}

void zero_density_longitudinal(std::span<const double> ux, std::span<const double> uy,
                               std::span<double> uz, std::span<double> gamma) {
  const std::size_t n = ux.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = (ux[i] * ux[i] + uy[i] * uy[i]) * 0.5;
    uz[i] = v;
    gamma[i] = 1.0 + v;
  }
}

}  // namespace planewave::kernels::scalar
