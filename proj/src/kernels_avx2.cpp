// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after the runtime CPUID check in
// kernels.cpp. Each loop processes 4 doubles per vector with a scalar
// remainder.

#if defined(DDUIO_HAVE_AVX2)

#include <immintrin.h>

#include <cstddef>

#include "dduio/kernels.hpp"

namespace dduio::kernels {
namespace {

double dot_avx2(const double* x, const double* y, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    // horizontal sum of the 4 lanes
    __m128d lo = _mm256_castpd256_pd128(acc);
    __m128d hi = _mm256_extractf128_pd(acc, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swap = _mm_unpackhi_pd(lo, lo);
    double sum = _mm_cvtsd_f64(_mm_add_sd(lo, swap));
    for (; i < n; ++i) sum += x[i] * y[i];
    return sum;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n)
{
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n)
{
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(av, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) x[i] *= a;
}

void rot_avx2(double* x, double* y, double c, double s, std::size_t n)
{
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmadd_pd(cv, xv, _mm256_mul_pd(sv, yv)));
        _mm256_storeu_pd(y + i, _mm256_fmsub_pd(cv, yv, _mm256_mul_pd(sv, xv)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -s * xi + c * yi;
    }
}

void gemm_avx2(const double* a, const double* b, double* c, std::size_t r,
               std::size_t k, std::size_t cols)
{
    for (std::size_t i = 0; i < r; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * cols;
        for (std::size_t l = 0; l < k; ++l) {
            const double av = arow[l];
            if (av == 0.0) continue;
            const __m256d avv = _mm256_set1_pd(av);
            const double* brow = b + l * cols;
            std::size_t j = 0;
            for (; j + 4 <= cols; j += 4) {
                __m256d cv = _mm256_loadu_pd(crow + j);
                cv = _mm256_fmadd_pd(avv, _mm256_loadu_pd(brow + j), cv);
                _mm256_storeu_pd(crow + j, cv);
            }
            for (; j < cols; ++j) crow[j] += av * brow[j];
        }
    }
}

constexpr Ops kAvx2Ops = {dot_avx2, axpy_avx2, scale_avx2, rot_avx2, gemm_avx2,
                          "avx2"};

}  // namespace

namespace detail {
const Ops& avx2_ops_impl() { return kAvx2Ops; }
}  // namespace detail

}  // namespace dduio::kernels

#endif  // DDUIO_HAVE_AVX2
