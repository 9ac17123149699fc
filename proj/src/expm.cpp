#include <cmath>

#include "dduio/linalg.hpp"

namespace dduio {

Mat solve(const Mat& a, const Mat& b)
{
    if (a.rows() != a.cols()) throw data_error("solve needs a square matrix");
    if (a.rows() != b.rows()) throw data_error("solve dimension mismatch");
    const int n = a.rows();
    Mat lu = a;
    Mat x = b;

    for (int k = 0; k < n; ++k) {
        // partial pivoting
        int piv = k;
        double best = std::abs(lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best == 0.0) throw numerics_error("solve: matrix is singular");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
            for (int j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(piv, j));
        }
        const double inv = 1.0 / lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = lu(i, k) * inv;
            if (f == 0.0) continue;
            lu(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (int j = 0; j < x.cols(); ++j) x(i, j) -= f * x(k, j);
        }
    }
    // back substitution
    for (int k = n - 1; k >= 0; --k) {
        const double inv = 1.0 / lu(k, k);
        for (int j = 0; j < x.cols(); ++j) {
            double s = x(k, j);
            for (int i = k + 1; i < n; ++i) s -= lu(k, i) * x(i, j);
            x(k, j) = s * inv;
        }
    }
    return x;
}

// Scaling-and-squaring with the degree-13 Pade approximant (Higham's
// coefficients). Input is scaled so ||A/2^s||_1 <= theta13, the rational
// approximant is evaluated, and the result squared s times.
Mat expm(const Mat& a)
{
    if (a.rows() != a.cols()) throw data_error("expm needs a square matrix");
    if (!a.all_finite()) throw data_error("expm input must be finite");
    const int n = a.rows();
    if (n == 0) return Mat(0, 0);

    static const double b[14] = {64764752532480000.0, 32382376266240000.0,
                                 7771770303897600.0,  1187353796428800.0,
                                 129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,
                                 1323241920.0,        40840800.0,
                                 960960.0,            16380.0,
                                 182.0,               1.0};
    const double theta13 = 5.371920351148152;

    // 1-norm = max column sum
    double norm1 = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::abs(a(i, j));
        norm1 = std::max(norm1, s);
    }

    int squarings = 0;
    Mat as = a;
    if (norm1 > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
        as *= std::ldexp(1.0, -squarings);
    }

    const Mat ident = Mat::identity(n);
    const Mat a2 = as * as;
    const Mat a4 = a2 * a2;
    const Mat a6 = a4 * a2;

    Mat u = a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] +
            a2 * b[3] + ident * b[1];
    u = as * u;
    Mat v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] +
            a2 * b[2] + ident * b[0];

    Mat r = solve(v - u, v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    if (!r.all_finite()) throw numerics_error("expm overflow");
    return r;
}

Discretization discretize_exact(const Mat& a_c, const Mat& e_c, double t_s)
{
    if (a_c.rows() != a_c.cols()) throw data_error("A_c must be square");
    if (e_c.rows() != a_c.rows()) throw data_error("A_c/E_c row mismatch");
    if (!(t_s > 0.0)) throw data_error("sampling period must be positive");

    const int n = a_c.rows();
    const int md = e_c.cols();
    Mat aug(n + md, n + md);
    aug.set_block(0, 0, a_c);
    aug.set_block(0, n, e_c);
    aug *= t_s;

    const Mat phi = expm(aug);
    return {phi.block(0, 0, n, n), phi.block(0, n, n, md)};
}

}  // namespace dduio
