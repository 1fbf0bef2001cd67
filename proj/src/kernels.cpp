#include "planewave/kernels.hpp"

#include <atomic>

#include "planewave/errors.hpp"

namespace planewave::kernels {

namespace {

// -1: auto, otherwise static_cast<int>(Isa).
std::atomic<int> g_override{-1};

template <class... Spans>
void require_same_size(std::size_t n, const Spans&... spans) {
  if (((spans.size() != n) || ...)) {
    throw DomainError("kernels: batch arrays must have equal length");
  }
}

}  // namespace

bool avx2_available() {
#if defined(PLANEWAVE_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool has = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return has;
#else
  return false;
#endif
}

Isa active_isa() {
  const int forced = g_override.load(std::memory_order_relaxed);
  if (forced == static_cast<int>(Isa::scalar)) return Isa::scalar;
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void set_isa_override(std::optional<Isa> isa) {
  g_override.store(isa ? static_cast<int>(*isa) : -1, std::memory_order_relaxed);
}

void recover_from_s(const SInputs& in, const KinematicsOut& out) {
  require_same_size(in.s.size(), in.ux, in.uy, out.gamma, out.uz, out.beta_x, out.beta_y,
                    out.beta_z);
  if (active_isa() == Isa::avx2) {
    avx2::recover_from_s(in, out);
  } else {
    scalar::recover_from_s(in, out);
  }
}

void correction_weight(std::span<const double> uz0, std::span<const double> em1,
                       std::span<double> g) {
  require_same_size(uz0.size(), em1, g);
  if (active_isa() == Isa::avx2) {
    avx2::correction_weight(uz0, em1, g);
  } else {
    scalar::correction_weight(uz0, em1, g);
  }
}

void zero_density_longitudinal(std::span<const double> ux, std::span<const double> uy,
                               std::span<double> uz, std::span<double> gamma) {
  require_same_size(ux.size(), uy, uz, gamma);
  if (active_isa() == Isa::avx2) {
    avx2::zero_density_longitudinal(ux, uy, uz, gamma);
  } else {
    scalar::zero_density_longitudinal(ux, uy, uz, gamma);
  }
}

}  // namespace planewave::kernels
