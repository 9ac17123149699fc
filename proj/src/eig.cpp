#include <algorithm>
#include <cfloat>
#include <cmath>

#include "dduio/linalg.hpp"

namespace dduio {

namespace {

// Parlett-Reinsch balancing: diagonal similarity scaling so row and column
// norms roughly match. Improves eigenvalue accuracy for badly scaled inputs
// (the continuous-time converter matrices mix entries of order 1 and 1e3).
void balance(Mat& a)
{
    const int n = a.rows();
    const double radix = 2.0;
    const double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double ginv = 1.0 / f;
                for (int j = 0; j < n; ++j) a(i, j) *= ginv;
                for (int j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form (in place).
void hessenberg(Mat& a)
{
    const int n = a.rows();
    for (int k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::abs(a(i, k));
        if (scale == 0.0) continue;

        Vec v(n, 0.0);
        double h = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            h += v[i] * v[i];
        }
        double g = std::sqrt(h);
        if (v[k + 1] > 0.0) g = -g;
        h -= v[k + 1] * g;
        v[k + 1] -= g;

        // A <- P A P with P = I - v v^T / h
        for (int j = 0; j < n; ++j) {
            double f = 0.0;
            for (int i = k + 1; i < n; ++i) f += v[i] * a(i, j);
            f /= h;
            for (int i = k + 1; i < n; ++i) a(i, j) -= f * v[i];
        }
        for (int i = 0; i < n; ++i) {
            double f = 0.0;
            for (int j = k + 1; j < n; ++j) f += a(i, j) * v[j];
            f /= h;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * v[j];
        }
        a(k + 1, k) = scale * g;
        for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

inline double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Francis double-shift QR on an upper Hessenberg matrix; classic hqr
// iteration with exceptional shifts every 10 sweeps.
std::vector<std::complex<double>> hqr(Mat& h)
{
    const int n = h.rows();
    std::vector<std::complex<double>> w(n);
    const double eps = DBL_EPSILON;

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(h(l, l - 1)) <= eps * s) {
                    h(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = h(nn, nn);
            if (l == nn) {
                w[nn--] = x + t;
            } else {
                double y = h(nn - 1, nn - 1);
                double ww = h(nn, nn - 1) * h(nn - 1, nn);
                if (l == nn - 1) {
                    const double p = 0.5 * (y - x);
                    const double q = p * p + ww;
                    double z = std::sqrt(std::abs(q));
                    x += t;
                    if (q >= 0.0) {
                        z = p + sign_of(z, p);
                        double w1 = x + z;
                        double w2 = (z != 0.0) ? x - ww / z : x + z;
                        w[nn - 1] = w1;
                        w[nn] = w2;
                    } else {
                        w[nn - 1] = {x + p, z};
                        w[nn] = {x + p, -z};
                    }
                    nn -= 2;
                } else {
                    if (its == 100)
                        throw numerics_error("eigenvalue QR iteration did not converge");
                    if (its > 0 && its % 10 == 0) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) h(i, i) -= x;
                        const double s = std::abs(h(nn, nn - 1)) +
                                         std::abs(h(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        ww = -0.4375 * s * s;
                    }
                    ++its;
                    int m;
                    double p = 0.0, q = 0.0, r = 0.0;
                    for (m = nn - 2; m >= l; --m) {
                        const double z = h(m, m);
                        const double rr = x - z;
                        const double ss = y - z;
                        p = (rr * ss - ww) / h(m + 1, m) + h(m, m + 1);
                        q = h(m + 1, m + 1) - z - rr - ss;
                        r = h(m + 2, m + 1);
                        const double s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) +
                                                        std::abs(z) +
                                                        std::abs(h(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        h(i, i - 2) = 0.0;
                        if (i > m + 2) h(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = h(k, k - 1);
                            q = h(k + 1, k - 1);
                            r = (k + 2 <= nn) ? h(k + 2, k - 1) : 0.0;
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) h(k, k - 1) = -h(k, k - 1);
                        } else {
                            h(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        double y2 = q / s;
                        double z2 = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            double pp = h(k, j) + q * h(k + 1, j);
                            if (k + 2 <= nn) {
                                pp += r * h(k + 2, j);
                                h(k + 2, j) -= pp * z2;
                            }
                            h(k + 1, j) -= pp * y2;
                            h(k, j) -= pp * x;
                        }
                        const int mmin = std::min(nn, k + 3);
                        for (int i = l; i <= mmin; ++i) {
                            double pp = x * h(i, k) + y2 * h(i, k + 1);
                            if (k + 2 <= nn) {
                                pp += z2 * h(i, k + 2);
                                h(i, k + 2) -= pp * r;
                            }
                            h(i, k + 1) -= pp * q;
                            h(i, k) -= pp;
                        }
                    }
                }
            }
        } while (l < nn - 1 && nn >= 0);
    }
    return w;
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Mat& a)
{
    if (a.rows() != a.cols()) throw data_error("eigenvalues need a square matrix");
    if (!a.all_finite()) throw data_error("eigenvalue input must be finite");
    if (a.rows() == 0) return {};
    if (a.rows() == 1) return {std::complex<double>(a(0, 0))};
    Mat h = a;
    balance(h);
    hessenberg(h);
    return hqr(h);
}

double spectral_radius(const Mat& a)
{
    double rho = 0.0;
    for (const auto& l : eigenvalues(a)) rho = std::max(rho, std::abs(l));
    return rho;
}

bool is_schur(const Mat& a, const Tolerance& tol)
{
    tol.validate();
    return spectral_radius(a) < 1.0 - tol.schur_margin;
}

}  // namespace dduio
