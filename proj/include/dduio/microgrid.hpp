#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "dduio/lti.hpp"
#include "dduio/uio.hpp"

namespace dduio {

// One distributed generation unit of a DC microgrid: buck converter with RLC
// output filter, local load, and a stabilizing primary voltage controller.
// State x = [V, I_t, v_int], unknown input d = [I_net + I_L, V_ref + alpha].
// The electrical parameters are representative converter-filter values; the
// controller gains place the continuous poles at {-60, -90, -120} s^-1
// (see controller_gains_for_poles). All defaults overridable via CLI/config.
struct DguParams {
    double r_t = 0.2;     // filter resistance, ohm
    double l_t = 1.8e-3;  // filter inductance, H
    double c_t = 2.2e-3;  // filter capacitance, F
    double k1 = 0.907336;
    double k2 = -0.286;
    double k3 = 2.56608;
    double v_ref = 48.0;  // nominal reference voltage, V
    double i_l0 = 5.0;    // nominal load current, A
    double t_s = 0.01;    // sampling period, s

    void validate() const;
};

// Closed-form pole placement for the primary controller: returns params with
// (k1, k2, k3) set so the closed-loop A_c has the given (real, negative,
// distinct) eigenvalues.
DguParams controller_gains_for_poles(DguParams params, double p1, double p2,
                                     double p3);

struct DguContinuous {
    Mat a_c;  // 3x3
    Mat e_c;  // 3x2
};

// Closed-loop continuous dynamics xdot = A_c x + E_c d; throws data_error
// when the controller gains fail to make A_c Hurwitz.
DguContinuous dgu_continuous(const DguParams& params);

// Exact discretization at t_s: B has zero columns (no known inputs) and
// C = I (all states communicated).
LtiSystem dgu_discrete(const DguParams& params);

// Historical experiment: random initial state near the nominal operating
// point, d = d0 + delta_d with seeded uniform delta_d of +-10% of nominal.
// Retries with derived seeds (bounded) until Assumption 1 holds.
Trajectory collect_historical(const DguParams& params, int t_len,
                              std::uint64_t seed);

// Fresh online run with the same draw structure; runs with the same seed
// share their random stream step by step, so a longer run extends a shorter
// one bit-exactly.
Trajectory simulate_online(const DguParams& params, int n_steps,
                           std::uint64_t seed);

// Additive output corruption y^c_t = y_t + phi_t, zero before the start
// step. Constructors reject an all-zero phi.
struct AttackSpec {
    int t_a = 0;
    Mat phi;  // p x 1 constant, or p x K sequence applied from t_a on

    static AttackSpec constant(int t_a, const Vec& phi);
    static AttackSpec sequence(int t_a, const Mat& phi_cols);

    Vec phi_at(int t) const;
    void validate() const;
};

Mat apply_attack(const Mat& y, const AttackSpec& spec);

struct ScenarioResult {
    Trajectory truth;
    Mat y_observed;  // outputs as received by the monitor (attacked or not)
    Mat estimates;   // n x N, xhat_0 = 0
    Mat residuals;   // y_observed - estimates
    std::optional<AttackSpec> attack;
    UioRealization realization;
    ExistenceReport report;
    std::uint64_t scenario_seed = 0;
};

// Synthesizes the UIO from the historical data (throws no_uio_error when the
// existence conditions fail), simulates the plant for n_steps, and runs the
// estimator on the communicated outputs. The estimator sees only y; d stays
// on the plant side.
ScenarioResult run_safe_scenario(const DguParams& params, const Trajectory& hist,
                                 int n_steps, std::uint64_t seed);

ScenarioResult run_attack_scenario(const DguParams& params,
                                   const Trajectory& hist, int n_steps,
                                   const AttackSpec& spec, std::uint64_t seed);

// Plot-ready per-step CSV: t, x_*, xhat_*, r_*, attacked flag.
void write_scenario_csv(const std::filesystem::path& path,
                        const ScenarioResult& res);

// Machine-readable run summary (norms, spectral radius, verdicts).
std::string scenario_summary_json(const ScenarioResult& res);

}  // namespace dduio
