#include "dduio/uio.hpp"

#include <cmath>

#include "dduio/rng.hpp"

namespace dduio {

namespace {

void check_blocks(const HankelBlocks& b)
{
    if (b.cols() < 1) throw data_error("Hankel blocks are empty");
    if (b.v_p.rows() != b.m + b.p || b.v_f.rows() != b.m + b.p ||
        b.x_p.rows() != b.n || b.x_f.rows() != b.n)
        throw data_error("Hankel block dimensions are inconsistent");
}

// Kernel-inclusion route (b): does X_f annihilate the kernel basis? The
// product is compared against the same scale the rank decisions use, i.e.
// the rank cutoff of the 4-stack.
bool xf_kills_kernel(const HankelBlocks& blocks, const Svd& dec3,
                     const Svd& dec4, const Tolerance& tol)
{
    const double cut3 = dec3.rank_cutoff(tol);
    const int cols = blocks.cols();
    const int rank3 = dec3.rank(tol);
    const Mat kernel = dec3.v.block(0, rank3, cols, cols - rank3);
    if (kernel.cols() == 0) return true;
    const Mat prod = blocks.x_f * kernel;
    const double threshold = std::max(dec4.rank_cutoff(tol), cut3);
    return prod.max_abs() < threshold;
}

}  // namespace

XiPartition compute_xi(const HankelBlocks& blocks, const Tolerance& tol)
{
    check_blocks(blocks);
    XiPartition part;
    part.mp = blocks.m + blocks.p;
    part.n = blocks.n;
    part.xi = pinv(blocks.stack3(), tol);
    return part;
}

bool check_kernel_inclusion(const HankelBlocks& blocks, const Tolerance& tol)
{
    check_blocks(blocks);
    const Svd dec3 = svd(blocks.stack3());
    const Svd dec4 = svd(blocks.stack4());
    const bool by_rank = dec3.rank(tol) == dec4.rank(tol);
    const bool by_kernel = xf_kills_kernel(blocks, dec3, dec4, tol);
    if (by_rank != by_kernel)
        throw numerics_error(
            "kernel-inclusion routes disagree (rank equality vs kernel "
            "annihilation); tolerances are inconsistent for this data");
    return by_rank;
}

SynthesisResult synthesize(const HankelBlocks& blocks, const Tolerance& tol)
{
    check_blocks(blocks);
    tol.validate();

    const Mat stack3 = blocks.stack3();
    const Svd dec3 = svd(stack3);
    const Svd dec4 = svd(blocks.stack4());

    SynthesisResult out;
    ExistenceReport& rep = out.report;
    rep.tol = tol;
    rep.pe = blocks.pe;
    rep.rank_stack3 = dec3.rank(tol);
    rep.rank_stack4 = dec4.rank(tol);
    rep.source_digest = blocks.digest();

    const bool by_rank = rep.rank_stack3 == rep.rank_stack4;
    const bool by_kernel = xf_kills_kernel(blocks, dec3, dec4, tol);
    if (by_rank != by_kernel)
        throw numerics_error(
            "kernel-inclusion routes disagree (rank equality vs kernel "
            "annihilation); tolerances are inconsistent for this data");
    rep.kernel_inclusion = by_rank;
    rep.cond_stack3 =
        rep.rank_stack3 > 0 ? dec3.sigma[0] / dec3.sigma[rep.rank_stack3 - 1]
                            : 0.0;

    UioRealization& r = out.realization;
    r.n = blocks.n;
    r.mp = blocks.m + blocks.p;
    r.tol = tol;
    r.source_digest = rep.source_digest;

    XiPartition part;
    part.mp = r.mp;
    part.n = r.n;
    part.xi = pinv(dec3, tol);

    r.a_uio = blocks.x_f * part.xp_part();
    r.d_uio = blocks.x_f * part.vf_part();
    r.b_uio = blocks.x_f * (part.vp_part() + part.xp_part() * r.d_uio);
    r.gain = blocks.x_f * part.xi;

    rep.spectral_radius_a_uio = spectral_radius(r.a_uio);
    rep.schur = rep.spectral_radius_a_uio < 1.0 - tol.schur_margin;
    rep.exists = rep.kernel_inclusion && rep.schur;
    return out;
}

XiIndependence xi_independence_check(const HankelBlocks& blocks,
                                     const Tolerance& tol, std::uint64_t seed)
{
    check_blocks(blocks);
    const Mat stack3 = blocks.stack3();
    const Svd dec3 = svd(stack3);
    const Svd dec4 = svd(blocks.stack4());
    const bool inclusion =
        dec3.rank(tol) == dec4.rank(tol) && xf_kills_kernel(blocks, dec3, dec4, tol);
    if (!inclusion) return XiIndependence::not_applicable;

    const int cols = blocks.cols();
    const int rank3 = dec3.rank(tol);
    const Mat kernel = dec3.v.block(0, rank3, cols, cols - rank3);

    XiPartition base;
    base.mp = blocks.m + blocks.p;
    base.n = blocks.n;
    base.xi = pinv(dec3, tol);

    const Mat a0 = blocks.x_f * base.xp_part();
    const Mat d0 = blocks.x_f * base.vf_part();
    const Mat b0 = blocks.x_f * (base.vp_part() + base.xp_part() * d0);
    if (kernel.cols() == 0) return XiIndependence::confirmed;

    Rng rng(seed);
    Mat coeffs(kernel.cols(), base.xi.cols());
    for (int i = 0; i < coeffs.rows(); ++i)
        for (int j = 0; j < coeffs.cols(); ++j) coeffs(i, j) = rng.uniform(-1.0, 1.0);

    XiPartition pert = base;
    pert.xi = base.xi + kernel * coeffs;

    const Mat a1 = blocks.x_f * pert.xp_part();
    const Mat d1 = blocks.x_f * pert.vf_part();
    const Mat b1 = blocks.x_f * (pert.vp_part() + pert.xp_part() * d1);

    auto close = [](const Mat& lhs, const Mat& rhs) {
        return (lhs - rhs).max_abs() <= 1e-8 * std::max(1.0, rhs.max_abs());
    };
    return close(a1, a0) && close(b1, b0) && close(d1, d0)
               ? XiIndependence::confirmed
               : XiIndependence::violated;
}

Vec estimate_step(const UioRealization& r, const Vec& xhat, const Vec& v_t,
                  const Vec& v_next)
{
    if (static_cast<int>(xhat.size()) != r.n ||
        static_cast<int>(v_t.size()) != r.mp ||
        static_cast<int>(v_next.size()) != r.mp)
        throw data_error("estimate_step dimension mismatch");
    return r.gain * concat(v_t, xhat, v_next);
}

Mat run_estimator(const UioRealization& r, const Vec& xhat0, const Mat& v)
{
    if (v.rows() != r.mp) throw data_error("estimator input dimension mismatch");
    if (v.cols() < 1) throw data_error("estimator needs at least one sample");
    if (static_cast<int>(xhat0.size()) != r.n)
        throw data_error("xhat0 dimension mismatch");

    Mat xhat(r.n, v.cols());
    Vec cur = xhat0;
    xhat.set_col(0, cur);
    for (int t = 0; t + 1 < v.cols(); ++t) {
        cur = estimate_step(r, cur, v.col(t), v.col(t + 1));
        xhat.set_col(t + 1, cur);
    }
    return xhat;
}

bool verify_compatibility(const HankelBlocks& blocks, const Vec& v_t,
                          const Vec& x_t, const Vec& v_next, const Vec& x_next,
                          const Tolerance& tol, double rel_residual_tol)
{
    check_blocks(blocks);
    const int mp = blocks.m + blocks.p;
    if (static_cast<int>(v_t.size()) != mp ||
        static_cast<int>(v_next.size()) != mp ||
        static_cast<int>(x_t.size()) != blocks.n ||
        static_cast<int>(x_next.size()) != blocks.n)
        throw data_error("verify_compatibility dimension mismatch");

    Vec w = concat(v_t, x_t, v_next);
    w.insert(w.end(), x_next.begin(), x_next.end());

    // residual of the orthogonal projection onto range(stack4)
    const Svd dec = svd(blocks.stack4());
    const double cut = dec.rank_cutoff(tol);
    Vec proj(w.size(), 0.0);
    for (int k = 0; k < static_cast<int>(dec.sigma.size()); ++k) {
        if (dec.sigma[k] <= cut) break;
        double coef = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) coef += dec.u(static_cast<int>(i), k) * w[i];
        for (std::size_t i = 0; i < w.size(); ++i) proj[i] += coef * dec.u(static_cast<int>(i), k);
    }
    double resid = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double dlt = w[i] - proj[i];
        resid += dlt * dlt;
    }
    return std::sqrt(resid) / std::max(1.0, norm2(w)) < rel_residual_tol;
}

}  // namespace dduio
