#include "dduio/lti.hpp"

#include <array>
#include <cmath>

namespace dduio {

void LtiSystem::validate() const
{
    if (a.rows() != a.cols()) throw data_error("A must be square");
    if (b.rows() != a.rows() || e.rows() != a.rows() || c.cols() != a.rows())
        throw data_error("system dimension mismatch");
    if (!a.all_finite() || !b.all_finite() || !e.all_finite() || !c.all_finite())
        throw data_error("system matrices must be finite");
}

Trajectory simulate(const LtiSystem& sys, const Vec& x0, const Mat& u, const Mat& d)
{
    sys.validate();
    if (static_cast<int>(x0.size()) != sys.n()) throw data_error("x0 dimension mismatch");
    if (u.rows() != sys.m() || d.rows() != sys.m_d())
        throw data_error("input dimension mismatch");
    if (u.cols() != d.cols()) throw data_error("u and d lengths differ");
    const int T = u.cols();
    if (T < 1) throw data_error("need at least one step");

    Trajectory traj;
    traj.n = sys.n();
    traj.m = sys.m();
    traj.p = sys.p();
    traj.m_d = sys.m_d();
    traj.u = u;
    traj.d = d;
    traj.has_d = true;
    traj.has_x = true;
    traj.x = Mat(sys.n(), T);
    traj.y = Mat(sys.p(), T);

    Vec xt = x0;
    for (int t = 0; t < T; ++t) {
        traj.x.set_col(t, xt);
        traj.y.set_col(t, sys.c * xt);
        if (t + 1 < T) {
            Vec next = sys.a * xt;
            const Vec bu = sys.b * u.col(t);
            const Vec ed = sys.e * d.col(t);
            for (int i = 0; i < sys.n(); ++i) next[i] += bu[i] + ed[i];
            xt = std::move(next);
        }
    }
    return traj;
}

void ExcitationSpec::validate() const
{
    if (length < 1) throw data_error("excitation length must be >= 1");
    if (dims < 0) throw data_error("excitation dims must be >= 0");
    if (!(amplitude > 0.0)) throw data_error("excitation amplitude must be > 0");
    if (!base.empty() && static_cast<int>(base.size()) != dims)
        throw data_error("excitation base dimension mismatch");
}

Mat generate_excitation(const ExcitationSpec& spec)
{
    spec.validate();
    Rng rng(spec.seed);
    Mat sig(spec.dims, spec.length);

    switch (spec.kind) {
        case ExcitationKind::uniform_random:
            for (int t = 0; t < spec.length; ++t)
                for (int i = 0; i < spec.dims; ++i)
                    sig(i, t) = rng.uniform(-spec.amplitude, spec.amplitude);
            break;
        case ExcitationKind::gaussian:
            for (int t = 0; t < spec.length; ++t)
                for (int i = 0; i < spec.dims; ++i)
                    sig(i, t) = spec.amplitude * rng.normal();
            break;
        case ExcitationKind::prbs:
            for (int t = 0; t < spec.length; ++t)
                for (int i = 0; i < spec.dims; ++i)
                    sig(i, t) = spec.amplitude * rng.sign();
            break;
        case ExcitationKind::multisine: {
            const int count = (spec.length + 1) / 2;
            const double golden = 0.6180339887498949;
            std::vector<double> omega(count), phase(count);
            for (int k = 0; k < count; ++k) {
                // irrationally spaced frequencies keep the tones incommensurate
                omega[k] = 3.141592653589793 * std::fmod((k + 1) * golden, 1.0);
                phase[k] = rng.uniform(0.0, 6.283185307179586);
            }
            const double scale = spec.amplitude / std::sqrt(static_cast<double>(count));
            for (int i = 0; i < spec.dims; ++i) {
                const double chan_shift = rng.uniform(0.0, 6.283185307179586);
                for (int t = 0; t < spec.length; ++t) {
                    double s = 0.0;
                    for (int k = 0; k < count; ++k)
                        s += std::sin(omega[k] * t + phase[k] + chan_shift);
                    sig(i, t) = scale * s;
                }
            }
            break;
        }
        case ExcitationKind::constant_plus_random:
            for (int t = 0; t < spec.length; ++t)
                for (int i = 0; i < spec.dims; ++i) {
                    const double base = spec.base.empty() ? 0.0 : spec.base[i];
                    sig(i, t) = base + rng.uniform(-spec.amplitude, spec.amplitude);
                }
            break;
    }
    return sig;
}

MinimalityReport check_minimality(const LtiSystem& sys, const Tolerance& tol)
{
    sys.validate();
    const int n = sys.n();
    const std::array<Mat, 2> be_parts = {sys.b, sys.e};
    const Mat be = Mat::hstack(be_parts);

    std::vector<Mat> ctrb_parts, obsv_parts;
    Mat ak = Mat::identity(n);
    for (int k = 0; k < n; ++k) {
        ctrb_parts.push_back(ak * be);
        obsv_parts.push_back(sys.c * ak);
        if (k + 1 < n) ak = sys.a * ak;
    }
    MinimalityReport rep;
    rep.controllable = numerical_rank(Mat::hstack(ctrb_parts), tol) == n;
    rep.observable = numerical_rank(Mat::vstack(obsv_parts), tol) == n;
    return rep;
}

ThetaOracle build_theta(const LtiSystem& sys)
{
    sys.validate();
    const int n = sys.n();
    const int m = sys.m();
    const int md = sys.m_d();
    const int p = sys.p();

    // Theta row blocks: u_[t:t+1] (2m), y_[t:t+1] (2p), x_[t:t+1] (2n);
    // column blocks: u_[t:t+1] (2m), d_[t:t+1] (2m_d), x_t (n).
    Mat theta(2 * m + 2 * p + 2 * n, 2 * m + 2 * md + n);
    theta.set_block(0, 0, Mat::identity(2 * m));

    const int row_y = 2 * m;
    const int row_x = 2 * m + 2 * p;
    const int col_d = 2 * m;
    const int col_x = 2 * m + 2 * md;

    // y_t = C x_t, y_{t+1} = CB u_t + CE d_t + CA x_t
    theta.set_block(row_y + p, 0, sys.c * sys.b);
    theta.set_block(row_y + p, col_d, sys.c * sys.e);
    theta.set_block(row_y, col_x, sys.c);
    theta.set_block(row_y + p, col_x, sys.c * sys.a);

    // x_t = x_t, x_{t+1} = B u_t + E d_t + A x_t
    theta.set_block(row_x + n, 0, sys.b);
    theta.set_block(row_x + n, col_d, sys.e);
    theta.set_block(row_x, col_x, Mat::identity(n));
    theta.set_block(row_x + n, col_x, sys.a);

    // P_R sends col(v_t, x_t, v_{t+1}, x_{t+1}) to
    // col(u_t, u_{t+1}, y_t, y_{t+1}, x_t, x_{t+1})
    const int total = 2 * (m + p) + 2 * n;
    Mat p_r(total, total);
    const int src_v0 = 0;
    const int src_x0 = m + p;
    const int src_v1 = m + p + n;
    const int src_x1 = 2 * (m + p) + n;
    int row = 0;
    auto place = [&](int src_base, int count) {
        for (int i = 0; i < count; ++i) p_r(row++, src_base + i) = 1.0;
    };
    place(src_v0, m);          // u_t
    place(src_v1, m);          // u_{t+1}
    place(src_v0 + m, p);      // y_t
    place(src_v1 + m, p);      // y_{t+1}
    place(src_x0, n);          // x_t
    place(src_x1, n);          // x_{t+1}
    return {theta, p_r};
}

LtiSystem random_minimal_system(Rng& rng, int n, int m, int m_d, int p,
                                double rho_target)
{
    if (n < 1 || m < 0 || m_d < 0 || p < 1) throw data_error("bad system dims");
    if (m + m_d < 1)
        throw data_error("a minimal system needs at least one input channel");

    for (int attempt = 0; attempt < 256; ++attempt) {
        Mat a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
        const double rho = spectral_radius(a);
        if (rho == 0.0) continue;
        a *= rho_target / rho;

        auto randmat = [&rng](int r, int c) {
            Mat mm(r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) mm(i, j) = rng.normal();
            return mm;
        };
        LtiSystem sys{a, randmat(n, m), randmat(n, m_d), randmat(p, n)};
        const MinimalityReport rep = check_minimality(sys);
        if (rep.controllable && rep.observable) return sys;
    }
    throw numerics_error("failed to draw a minimal system");
}

}  // namespace dduio
