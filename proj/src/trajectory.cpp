#include "dduio/trajectory.hpp"

#include <array>

namespace dduio {

Mat Trajectory::v() const
{
    const std::array<Mat, 2> parts = {u, y};
    return Mat::vstack(parts);
}

Mat Trajectory::ud() const
{
    if (!has_d && m_d > 0) throw data_error("unknown-input data was not recorded");
    const std::array<Mat, 2> parts = {u, m_d > 0 ? d : Mat::zero(0, u.cols())};
    return Mat::vstack(parts);
}

void Trajectory::validate() const
{
    if (n < 0 || m < 0 || p < 0 || m_d < 0) throw data_error("negative dimension");
    const int T = length();
    if (T < 2) throw data_error("trajectory must have length >= 2");
    if (u.rows() != m || u.cols() != T) throw data_error("u dimension mismatch");
    if (y.rows() != p || y.cols() != T) throw data_error("y dimension mismatch");
    if (has_x && (x.rows() != n || x.cols() != T))
        throw data_error("x dimension mismatch");
    if (has_d && (d.rows() != m_d || d.cols() != T))
        throw data_error("d dimension mismatch");
    if (!u.all_finite() || !y.all_finite() || (has_x && !x.all_finite()) ||
        (has_d && !d.all_finite()))
        throw data_error("trajectory entries must be finite");
}

Mat hankel(const Mat& signal, int depth)
{
    const int q = signal.rows();
    const int T = signal.cols();
    if (depth < 1) throw data_error("hankel depth must be >= 1");
    if (depth > T) throw data_error("hankel depth exceeds signal length");
    const int cols = T - depth + 1;
    Mat h(q * depth, cols);
    for (int r = 0; r < depth; ++r)
        h.set_block(r * q, 0, signal.block(0, r, q, cols));
    return h;
}

bool is_persistently_exciting(const Mat& signal, int order, const Tolerance& tol)
{
    const int q = signal.rows();
    if (q == 0) return true;
    if (order < 1) throw data_error("PE order must be >= 1");
    if (signal.cols() < order) return false;
    // a Hankel with fewer columns than rows can never have full row rank
    if (signal.cols() - order + 1 < q * order) return false;
    return numerical_rank(hankel(signal, order), tol) == q * order;
}

CheckState check_assumption1(const Trajectory& traj, const Tolerance& tol)
{
    traj.validate();
    if (traj.m_d > 0 && !traj.has_d) return CheckState::not_checkable;
    return is_persistently_exciting(traj.ud(), traj.n + 2, tol)
               ? CheckState::passed
               : CheckState::failed;
}

Mat HankelBlocks::stack3() const
{
    const std::array<Mat, 3> parts = {v_p, x_p, v_f};
    return Mat::vstack(parts);
}

Mat HankelBlocks::stack4() const
{
    const std::array<Mat, 4> parts = {v_p, x_p, v_f, x_f};
    return Mat::vstack(parts);
}

std::uint64_t HankelBlocks::digest() const
{
    const std::array<Mat, 6> parts = {u_h, d_h, v_p, x_p, v_f, x_f};
    return fnv1a_digest(parts);
}

HankelBlocks build_blocks(const Trajectory& traj, const Tolerance& tol)
{
    traj.validate();
    if (!traj.has_x) throw data_error("historical data must include states");

    HankelBlocks b;
    b.n = traj.n;
    b.m = traj.m;
    b.p = traj.p;
    b.m_d = traj.m_d;
    b.t_len = traj.length();
    b.has_d = traj.has_d || traj.m_d == 0;

    const Mat v2 = hankel(traj.v(), 2);
    const Mat x2 = hankel(traj.x, 2);
    const int mp = traj.m + traj.p;
    b.v_p = v2.block(0, 0, mp, v2.cols());
    b.v_f = v2.block(mp, 0, mp, v2.cols());
    b.x_p = x2.block(0, 0, traj.n, x2.cols());
    b.x_f = x2.block(traj.n, 0, traj.n, x2.cols());
    b.u_h = hankel(traj.u, 2);
    b.d_h = b.has_d ? hankel(traj.has_d ? traj.d : Mat::zero(0, traj.length()), 2)
                    : Mat::zero(0, v2.cols());
    b.pe = check_assumption1(traj, tol);
    return b;
}

int min_historical_length(int n, int m, int m_d)
{
    return (m + m_d + 1) * (n + 2) - 1;
}

int default_historical_length(int n, int m, int m_d)
{
    return (m + m_d + 1) * (n + 2) + n;
}

}  // namespace dduio
