#include <cstddef>

#include "planewave/kernels.hpp"

#if defined(PLANEWAVE_HAVE_AVX2) && defined(__AVX2__)
#include <immintrin.h>

namespace planewave::kernels::avx2 {

void recover_from_s(const SInputs& in, const KinematicsOut& out) {
  const std::size_t n = in.s.size();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ux = _mm256_loadu_pd(in.ux.data() + i);
    const __m256d uy = _mm256_loadu_pd(in.uy.data() + i);
    const __m256d s = _mm256_loadu_pd(in.s.data() + i);
    const __m256d p2 = _mm256_add_pd(_mm256_mul_pd(ux, ux), _mm256_mul_pd(uy, uy));
    const __m256d s2 = _mm256_mul_pd(s, s);
    const __m256d two_s = _mm256_add_pd(s, s);
    const __m256d base = _mm256_add_pd(one, p2);
    const __m256d gamma = _mm256_div_pd(_mm256_add_pd(base, s2), two_s);
    const __m256d uz = _mm256_div_pd(_mm256_sub_pd(base, s2), two_s);
    _mm256_storeu_pd(out.gamma.data() + i, gamma);
    _mm256_storeu_pd(out.uz.data() + i, uz);
    _mm256_storeu_pd(out.beta_x.data() + i, _mm256_div_pd(ux, gamma));
    _mm256_storeu_pd(out.beta_y.data() + i, _mm256_div_pd(uy, gamma));
    _mm256_storeu_pd(out.beta_z.data() + i, _mm256_div_pd(uz, gamma));
  }
  if (i < n) {
    const std::size_t m = n - i;
    scalar::recover_from_s(
        {in.ux.subspan(i, m), in.uy.subspan(i, m), in.s.subspan(i, m)},
        {out.gamma.subspan(i, m), out.uz.subspan(i, m), out.beta_x.subspan(i, m),
         out.beta_y.subspan(i, m), out.beta_z.subspan(i, m)});
  }
}

void correction_weight(std::span<const double> uz0, std::span<const double> em1,
                       std::span<double> g) {
  const std::size_t n = uz0.size();
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d uz = _mm256_loadu_pd(uz0.data() + i);
    const __m256d m = _mm256_loadu_pd(em1.data() + i);
    const __m256d a = _mm256_add_pd(one, _mm256_add_pd(uz, uz));
    const __m256d num = _mm256_mul_pd(a, m);
    _mm256_storeu_pd(g.data() + i, _mm256_div_pd(num, _mm256_add_pd(_mm256_add_pd(a, one), m)));
  }
  if (i < n) {
    const std::size_t m = n - i;
    scalar::correction_weight(uz0.subspan(i, m), em1.subspan(i, m), g.subspan(i, m));
  }
}

void zero_density_longitudinal(std::span<const double> ux, std::span<const double> uy,
                               std::span<double> uz, std::span<double> gamma) {
  const std::size_t n = ux.size();
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(ux.data() + i);
    const __m256d y = _mm256_loadu_pd(uy.data() + i);
    const __m256d v =
        _mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y)), half);
    _mm256_storeu_pd(uz.data() + i, v);
    _mm256_storeu_pd(gamma.data() + i, _mm256_add_pd(one, v));
  }
  if (i < n) {
    const std::size_t m = n - i;
    scalar::zero_density_longitudinal(ux.subspan(i, m), uy.subspan(i, m), uz.subspan(i, m),
                                      gamma.subspan(i, m));
  }
}

}  // namespace planewave::kernels::avx2

#else

// Non-x86 builds: the AVX2 entry points forward to the scalar reference.
namespace planewave::kernels::avx2 {

void recover_from_s(const SInputs& in, const KinematicsOut& out) {
  scalar::recover_from_s(in, out);
}
void correction_weight(std::span<const double> uz0, std::span<const double> em1,
                       std::span<double> g) {
  scalar::correction_weight(uz0, em1, g);
}
void zero_density_longitudinal(std::span<const double> ux, std::span<const double> uy,
                               std::span<double> uz, std::span<double> gamma) {
  scalar::zero_density_longitudinal(ux, uy, uz, gamma);
}

}  // namespace planewave::kernels::avx2

#endif
