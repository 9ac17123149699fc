#include "dduio/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "dduio/common.hpp"

namespace dduio::kernels {

// ----------------------------------------------------------------------
// Scalar reference kernels
// ----------------------------------------------------------------------

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void rot_scalar(double* x, double* y, double c, double s, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = -s * xi + c * yi;
    }
}

void gemm_scalar(const double* a, const double* b, double* c, std::size_t r,
                 std::size_t k, std::size_t cols)
{
    for (std::size_t i = 0; i < r; ++i) {
        const double* arow = a + i * k;
        double* crow = c + i * cols;
        for (std::size_t l = 0; l < k; ++l) {
            const double av = arow[l];
            if (av == 0.0) continue;
            const double* brow = b + l * cols;
            for (std::size_t j = 0; j < cols; ++j) crow[j] += av * brow[j];
        }
    }
}

constexpr Ops kScalarOps = {dot_scalar, axpy_scalar, scale_scalar, rot_scalar,
                            gemm_scalar, "scalar"};

}  // namespace

const Ops& scalar_ops() { return kScalarOps; }

// ----------------------------------------------------------------------
// Runtime selection
// ----------------------------------------------------------------------

#if defined(DDUIO_HAVE_AVX2)
namespace detail {
const Ops& avx2_ops_impl();  // defined in kernels_avx2.cpp
}

bool avx2_available()
{
#if defined(__GNUC__) || defined(__clang__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& avx2_ops()
{
    if (!avx2_available())
        throw numerics_error("AVX2 kernels requested on a CPU without AVX2/FMA");
    return detail::avx2_ops_impl();
}
#else
bool avx2_available() { return false; }

const Ops& avx2_ops()
{
    throw numerics_error("AVX2 kernels not compiled in");
}
#endif

namespace {

std::atomic<const Ops*> g_active{nullptr};

const Ops* detect()
{
    if (const char* env = std::getenv("DDUIO_BACKEND")) {
        if (std::strcmp(env, "scalar") == 0) return &kScalarOps;
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return &avx2_ops();
    }
    if (avx2_available()) return &avx2_ops();
    return &kScalarOps;
}

}  // namespace

const Ops& active()
{
    const Ops* ops = g_active.load(std::memory_order_acquire);
    if (!ops) {
        ops = detect();
        g_active.store(ops, std::memory_order_release);
    }
    return *ops;
}

void force_backend(Backend b)
{
    switch (b) {
        case Backend::scalar:
            g_active.store(&kScalarOps, std::memory_order_release);
            break;
        case Backend::avx2:
            g_active.store(&avx2_ops(), std::memory_order_release);
            break;
        case Backend::auto_detect:
            g_active.store(detect(), std::memory_order_release);
            break;
    }
}

}  // namespace dduio::kernels
