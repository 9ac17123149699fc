#include "dduio/microgrid.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "dduio/rng.hpp"
#include "dduio/trajectory_io.hpp"

namespace dduio {

void DguParams::validate() const
{
    if (!(r_t > 0.0) || !(l_t > 0.0) || !(c_t > 0.0))
        throw data_error("DGU electrical parameters must be positive");
    if (!(t_s > 0.0)) throw data_error("sampling period must be positive");
}

DguParams controller_gains_for_poles(DguParams params, double p1, double p2,
                                     double p3)
{
    params.validate();
    if (!(p1 < 0.0 && p2 < 0.0 && p3 < 0.0))
        throw data_error("controller poles must be strictly negative");
    // char. polynomial of A_c is s^3 - b2 s^2 - (b1/C_t) s + b3/C_t with
    // b1 = (k1-1)/L_t, b2 = (k2-R_t)/L_t, b3 = k3/L_t; match coefficients
    // against (s - p1)(s - p2)(s - p3)
    const double c2 = -(p1 + p2 + p3);
    const double c1 = p1 * p2 + p1 * p3 + p2 * p3;
    const double c0 = -p1 * p2 * p3;
    params.k2 = params.r_t + params.l_t * (-c2);
    params.k1 = 1.0 + params.l_t * (-c1 * params.c_t);
    params.k3 = params.l_t * (c0 * params.c_t);
    return params;
}

DguContinuous dgu_continuous(const DguParams& params)
{
    params.validate();
    Mat a_c(3, 3);
    a_c(0, 1) = 1.0 / params.c_t;
    a_c(1, 0) = (params.k1 - 1.0) / params.l_t;
    a_c(1, 1) = (params.k2 - params.r_t) / params.l_t;
    a_c(1, 2) = params.k3 / params.l_t;
    a_c(2, 0) = -1.0;

    Mat e_c(3, 2);
    e_c(0, 0) = -1.0 / params.c_t;
    e_c(2, 1) = 1.0;

    for (const auto& lam : eigenvalues(a_c))
        if (!(lam.real() < 0.0))
            throw data_error(
                "primary controller gains do not stabilize the DGU (A_c is "
                "not Hurwitz)");
    return {a_c, e_c};
}

LtiSystem dgu_discrete(const DguParams& params)
{
    const DguContinuous ct = dgu_continuous(params);
    const Discretization d = discretize_exact(ct.a_c, ct.e_c, params.t_s);
    return LtiSystem{d.a, Mat::zero(3, 0), d.e, Mat::identity(3)};
}

namespace {

// Shared experiment generator. Draw order is fixed (x0 first, then d column
// by column) so runs with equal seeds agree on every common prefix.
Trajectory microgrid_experiment(const DguParams& params, int t_len,
                                std::uint64_t seed, const std::string& label)
{
    if (t_len < 2) throw data_error("experiment length must be >= 2");
    const LtiSystem sys = dgu_discrete(params);

    Rng rng(seed);
    const double x_nom[3] = {params.v_ref, params.i_l0, 0.0};
    const double x_amp[3] = {0.1 * params.v_ref, 0.1 * params.i_l0, 1.0};
    Vec x0(3);
    for (int i = 0; i < 3; ++i)
        x0[i] = x_nom[i] + rng.uniform(-x_amp[i], x_amp[i]);

    // d = d0 + delta_d, delta_d uniform within 10% of nominal (small floor
    // keeps excitation alive if a nominal component is zero)
    const double d0[2] = {params.i_l0, params.v_ref};
    const double d_amp[2] = {0.1 * std::abs(d0[0]) + 1e-3,
                             0.1 * std::abs(d0[1]) + 1e-3};
    Mat d(2, t_len);
    for (int t = 0; t < t_len; ++t)
        for (int i = 0; i < 2; ++i)
            d(i, t) = d0[i] + rng.uniform(-d_amp[i], d_amp[i]);

    Trajectory traj = simulate(sys, x0, Mat::zero(0, t_len), d);
    traj.meta.seed = seed;
    traj.meta.t_s = params.t_s;
    traj.meta.label = label;
    return traj;
}

}  // namespace

Trajectory collect_historical(const DguParams& params, int t_len,
                              std::uint64_t seed)
{
    const int max_attempts = 8;
    for (int k = 0; k < max_attempts; ++k) {
        const std::uint64_t attempt_seed = seed + 0x9e3779b97f4a7c15ull * k;
        Trajectory traj =
            microgrid_experiment(params, t_len, attempt_seed, "microgrid-historical");
        if (check_assumption1(traj) == CheckState::passed) {
            traj.meta.seed = seed;
            return traj;
        }
    }
    throw numerics_error(
        "historical data failed the excitation check after retries; "
        "increase T (need T >= " +
        std::to_string(min_historical_length(3, 0, 2)) + ")");
}

Trajectory simulate_online(const DguParams& params, int n_steps,
                           std::uint64_t seed)
{
    return microgrid_experiment(params, n_steps, seed, "microgrid-online");
}

AttackSpec AttackSpec::constant(int t_a, const Vec& phi)
{
    AttackSpec s;
    s.t_a = t_a;
    s.phi = Mat::from_column(phi);
    s.validate();
    return s;
}

AttackSpec AttackSpec::sequence(int t_a, const Mat& phi_cols)
{
    AttackSpec s;
    s.t_a = t_a;
    s.phi = phi_cols;
    s.validate();
    return s;
}

void AttackSpec::validate() const
{
    if (t_a < 0) throw data_error("attack start must be >= 0");
    if (phi.rows() < 1 || phi.cols() < 1) throw data_error("attack vector is empty");
    if (phi.max_abs() == 0.0)
        throw data_error("attack vector must be nonzero for some t >= T_a");
}

Vec AttackSpec::phi_at(int t) const
{
    Vec out(phi.rows(), 0.0);
    if (t < t_a) return out;
    if (phi.cols() == 1) return phi.col(0);
    const int k = t - t_a;
    return k < phi.cols() ? phi.col(k) : out;
}

Mat apply_attack(const Mat& y, const AttackSpec& spec)
{
    spec.validate();
    if (spec.phi.rows() != y.rows())
        throw data_error("attack dimension does not match output dimension");
    Mat yc = y;
    for (int t = spec.t_a; t < y.cols(); ++t) {
        const Vec phi = spec.phi_at(t);
        for (int i = 0; i < y.rows(); ++i) yc(i, t) += phi[i];
    }
    return yc;
}

namespace {

ScenarioResult run_scenario(const DguParams& params, const Trajectory& hist,
                            int n_steps, const std::optional<AttackSpec>& attack,
                            std::uint64_t seed)
{
    if (n_steps < 1) throw data_error("scenario length must be >= 1");

    const HankelBlocks blocks = build_blocks(hist);
    SynthesisResult syn = synthesize(blocks);
    if (!syn.report.exists)
        throw no_uio_error(
            "historical data does not admit a UIO (kernel inclusion: " +
            std::string(syn.report.kernel_inclusion ? "ok" : "failed") +
            ", spectral radius " +
            std::to_string(syn.report.spectral_radius_a_uio) + ")");

    ScenarioResult res;
    res.truth = simulate_online(params, n_steps, seed);
    res.attack = attack;
    res.realization = std::move(syn.realization);
    res.report = syn.report;
    res.scenario_seed = seed;

    res.y_observed = attack ? apply_attack(res.truth.y, *attack) : res.truth.y;

    // the monitor sees only the communicated outputs; m = 0 so v = y^c
    const Vec xhat0(res.realization.n, 0.0);
    res.estimates = run_estimator(res.realization, xhat0, res.y_observed);
    res.residuals = res.y_observed - res.estimates;
    return res;
}

}  // namespace

ScenarioResult run_safe_scenario(const DguParams& params, const Trajectory& hist,
                                 int n_steps, std::uint64_t seed)
{
    return run_scenario(params, hist, n_steps, std::nullopt, seed);
}

ScenarioResult run_attack_scenario(const DguParams& params,
                                   const Trajectory& hist, int n_steps,
                                   const AttackSpec& spec, std::uint64_t seed)
{
    spec.validate();
    return run_scenario(params, hist, n_steps, spec, seed);
}

void write_scenario_csv(const std::filesystem::path& path,
                        const ScenarioResult& res)
{
    std::ofstream f(path);
    if (!f) throw data_error("cannot open for writing: " + path.string());

    const int n = res.estimates.rows();
    const int p = res.residuals.rows();
    std::string header = "t";
    for (int i = 0; i < n; ++i) header += ",x_" + std::to_string(i);
    for (int i = 0; i < n; ++i) header += ",xhat_" + std::to_string(i);
    for (int i = 0; i < p; ++i) header += ",r_" + std::to_string(i);
    header += ",attacked";
    f << header << '\n';

    for (int t = 0; t < res.estimates.cols(); ++t) {
        std::string line = std::to_string(t);
        for (int i = 0; i < n; ++i) line += ',' + format_double(res.truth.x(i, t));
        for (int i = 0; i < n; ++i) line += ',' + format_double(res.estimates(i, t));
        for (int i = 0; i < p; ++i) line += ',' + format_double(res.residuals(i, t));
        const bool attacked = res.attack && t >= res.attack->t_a;
        line += attacked ? ",1" : ",0";
        f << line << '\n';
    }
    if (!f) throw data_error("write failed: " + path.string());
}

std::string scenario_summary_json(const ScenarioResult& res)
{
    using nlohmann::json;
    const int n_steps = res.estimates.cols();

    std::vector<double> err_norms(n_steps);
    for (int t = 0; t < n_steps; ++t) {
        const Vec e = res.truth.x.col(t);
        const Vec xh = res.estimates.col(t);
        double s = 0.0;
        for (int i = 0; i < res.estimates.rows(); ++i) {
            const double d = e[i] - xh[i];
            s += d * d;
        }
        err_norms[t] = std::sqrt(s);
    }

    json j = {
        {"steps", n_steps},
        {"seed", res.scenario_seed},
        {"spectral_radius_a_uio", res.report.spectral_radius_a_uio},
        {"exists", res.report.exists},
        {"realization_digest", res.realization.source_digest},
        {"error_norm_initial", err_norms.front()},
        {"error_norm_final", err_norms.back()},
        {"error_norms", err_norms},
        {"error_decayed", err_norms.back() < err_norms.front()},
    };

    if (res.attack) {
        const int t_a = res.attack->t_a;
        double pre = 0.0, post = 0.0;
        for (int t = 0; t < n_steps; ++t) {
            const double r = norm_inf(res.residuals.col(t));
            if (t < t_a)
                pre = std::max(pre, r);
            else
                post = std::max(post, r);
        }
        j["attack"] = {{"t_a", t_a},
                       {"max_residual_pre_attack", pre},
                       {"max_residual_post_attack", post},
                       {"attack_visible", post > pre}};
    }
    return j.dump(2);
}

}  // namespace dduio
