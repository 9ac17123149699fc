#pragma once

#include <cstddef>

// Dense double-precision kernels behind the matrix layer. Every entry point
// exists as a portable scalar reference implementation and, on x86-64, as an
// AVX2+FMA variant. The active table is chosen once at startup from CPUID
// (override with force_backend() or the DDUIO_BACKEND environment variable);
// both variants stay compiled in and are equivalence-tested against each
// other.

namespace dduio::kernels {

struct Ops {
    // sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // y += a*x
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // x *= a
    void (*scale)(double a, double* x, std::size_t n);
    // plane rotation: (x, y) <- (c*x + s*y, -s*x + c*y)
    void (*rot)(double* x, double* y, double c, double s, std::size_t n);
    // C += A*B, row-major dense, A is r x k, B is k x c, C is r x c
    void (*gemm)(const double* a, const double* b, double* c, std::size_t r,
                 std::size_t k, std::size_t cols);
    const char* name;
};

enum class Backend { auto_detect, scalar, avx2 };

// Active kernel table (dispatched on first use).
const Ops& active();

const Ops& scalar_ops();

// True when AVX2+FMA kernels are compiled in and the CPU supports them.
bool avx2_available();
const Ops& avx2_ops();  // throws numerics_error if unavailable

// Override dispatch, e.g. force_backend(Backend::scalar) in equivalence
// tests. auto_detect restores CPUID-based selection.
void force_backend(Backend b);

}  // namespace dduio::kernels
