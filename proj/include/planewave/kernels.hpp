#pragma once

// Batch arithmetic kernels with a scalar reference and an AVX2 variant.
// The active variant is chosen at runtime from CPU features; both variants
// perform the same IEEE operations in the same order and agree bitwise.

#include <optional>
#include <span>
#include <string_view>

namespace planewave::kernels {

enum class Isa { scalar, avx2 };

bool avx2_available();
Isa active_isa();
std::string_view isa_name(Isa isa);
/// Forces a variant (nullopt restores auto-detection). Requesting avx2 on a CPU
/// without it falls back to scalar.
void set_isa_override(std::optional<Isa> isa);

/// Structure-of-arrays input for recovering kinematics from (u_perp, s).
struct SInputs {
  std::span<const double> ux, uy, s;
};
struct KinematicsOut {
  std::span<double> gamma, uz, beta_x, beta_y, beta_z;
};

/// gamma = (1+u^2+s^2)/2s, u_z = (1+u^2-s^2)/2s, beta = u/gamma.
void recover_from_s(const SInputs& in, const KinematicsOut& out);

/// g = (1 + 2 u_z)(e^{2r} - 1) / (1 + 2 u_z + e^{2r}), given em1 = expm1(2 r).
void correction_weight(std::span<const double> uz0, std::span<const double> em1,
                       std::span<double> g);

/// u_z = |u_perp|^2/2 and gamma = 1 + u_z for the zero-density solution.
void zero_density_longitudinal(std::span<const double> ux, std::span<const double> uy,
                               std::span<double> uz, std::span<double> gamma);

namespace scalar {
void recover_from_s(const SInputs& in, const KinematicsOut& out);
void correction_weight(std::span<const double> uz0, std::span<const double> em1,
                       std::span<double> g);
void zero_density_longitudinal(std::span<const double> ux, std::span<const double> uy,
                               std::span<double> uz, std::span<double> gamma);
}  // namespace scalar

namespace avx2 {
void recover_from_s(const SInputs& in, const KinematicsOut& out);
void correction_weight(std::span<const double> uz0, std::span<const double> em1,
                       std::span<double> g);
void zero_density_longitudinal(std::span<const double> ux, std::span<const double> uy,
                               std::span<double> uz, std::span<double> gamma);
}  // namespace avx2

}  // namespace planewave::kernels
