#include <algorithm>
#include <cmath>
#include <numeric>

#include "dduio/kernels.hpp"
#include "dduio/linalg.hpp"

namespace dduio {

namespace {

// One-sided Jacobi on the columns of M, carried out on W = M^T so each
// column lives in a contiguous row. Rotations are accumulated into Vt whose
// rows end up as the right singular vectors.
struct JacobiResult {
    Mat w;   // cols(M) x rows(M); row j = sigma_j * u_j after convergence
    Mat vt;  // cols(M) x cols(M)
};

JacobiResult one_sided_jacobi(const Mat& m)
{
    const int r = m.rows();
    const int c = m.cols();
    JacobiResult out{m.transpose(), Mat::identity(c)};
    if (r == 0 || c == 0) return out;

    const auto& ops = kernels::active();
    const double tol = 1e-15;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < c - 1; ++p) {
            for (int q = p + 1; q < c; ++q) {
                double* wp = out.w.row(p);
                double* wq = out.w.row(q);
                const double alpha = ops.dot(wp, wp, r);
                const double beta = ops.dot(wq, wq, r);
                const double gamma = ops.dot(wp, wq, r);
                if (alpha == 0.0 || beta == 0.0) continue;
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;

                rotated = true;
                const double zeta = (beta - alpha) / (2.0 * gamma);
                const double t =
                    (zeta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = cs * t;
                ops.rot(wp, wq, cs, sn, r);
                ops.rot(out.vt.row(p), out.vt.row(q), cs, sn, c);
            }
        }
        if (!rotated) return out;
    }
    throw numerics_error("Jacobi SVD did not converge");
}

}  // namespace

Svd svd(const Mat& m)
{
    if (!m.all_finite()) throw data_error("SVD input must be finite");
    const int r = m.rows();
    const int c = m.cols();
    JacobiResult j = one_sided_jacobi(m);

    std::vector<double> sig(c);
    for (int i = 0; i < c; ++i) {
        sig[i] = r > 0 ? norm2(std::span<const double>(j.w.row(i), r)) : 0.0;
    }

    // sort descending, permuting the W and Vt rows alongside
    std::vector<int> order(c);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&sig](int a, int b) { return sig[a] > sig[b]; });

    Svd out;
    out.sigma.resize(c);
    out.u = Mat(r, c);
    out.v = Mat(c, c);
    for (int k = 0; k < c; ++k) {
        const int src = order[k];
        out.sigma[k] = sig[src];
        for (int i = 0; i < c; ++i) out.v(i, k) = j.vt(src, i);
        if (out.sigma[k] > 0.0) {
            const double inv = 1.0 / out.sigma[k];
            for (int i = 0; i < r; ++i) out.u(i, k) = j.w(src, i) * inv;
        }
    }
    return out;
}

double Svd::rank_cutoff(const Tolerance& tol) const
{
    tol.validate();
    const double smax = sigma.empty() ? 0.0 : sigma.front();
    const double dim = std::max(u.rows(), v.rows());
    return std::max(tol.rank_rel * dim * smax, tol.abs_floor);
}

int Svd::rank(const Tolerance& tol) const
{
    const double cut = rank_cutoff(tol);
    int r = 0;
    for (double s : sigma)
        if (s > cut) ++r;
    return r;
}

Mat pinv(const Mat& m, const Tolerance& tol) { return pinv(svd(m), tol); }

Mat pinv(const Svd& dec, const Tolerance& tol)
{
    const double cut = dec.rank_cutoff(tol);
    const int r = dec.u.rows();
    const int c = dec.v.rows();

    // M+ = V diag(1/sigma) U^T restricted to kept singular values; the kept
    // ones are a prefix because sigma is sorted descending
    Mat vs(c, c);
    int kept = 0;
    for (int k = 0; k < c; ++k) {
        if (dec.sigma[k] <= cut) continue;
        kept = k + 1;
        const double inv = 1.0 / dec.sigma[k];
        for (int i = 0; i < c; ++i) vs(i, k) = dec.v(i, k) * inv;
    }
    return vs.block(0, 0, c, kept) * dec.u.block(0, 0, r, kept).transpose();
}

Mat null_space_basis(const Mat& m, const Tolerance& tol)
{
    const Svd dec = svd(m);
    const double cut = dec.rank_cutoff(tol);
    const int c = m.cols();
    int rank = 0;
    for (double s : dec.sigma)
        if (s > cut) ++rank;
    return dec.v.block(0, rank, c, c - rank);
}

int numerical_rank(const Mat& m, const Tolerance& tol)
{
    if (m.empty()) return 0;
    return svd(m).rank(tol);
}

}  // namespace dduio
