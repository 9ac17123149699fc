#pragma once

#include <cstdint>

#include "dduio/linalg.hpp"
#include "dduio/rng.hpp"
#include "dduio/trajectory.hpp"

namespace dduio {

// Discrete LTI plant  x_{t+1} = A x_t + B u_t + E d_t,  y_t = C x_t  with
// known inputs u and unknown inputs d. Either input channel may be empty.
struct LtiSystem {
    Mat a;  // n x n
    Mat b;  // n x m
    Mat e;  // n x m_d
    Mat c;  // p x n

    int n() const { return a.rows(); }
    int m() const { return b.cols(); }
    int m_d() const { return e.cols(); }
    int p() const { return c.rows(); }

    void validate() const;
};

// Steps the recurrence in working precision; the returned trajectory carries
// d (historical experiments record everything).
Trajectory simulate(const LtiSystem& sys, const Vec& x0, const Mat& u,
                    const Mat& d);

enum class ExcitationKind {
    uniform_random,
    gaussian,
    prbs,
    multisine,
    constant_plus_random,
};

struct ExcitationSpec {
    ExcitationKind kind = ExcitationKind::uniform_random;
    int dims = 1;
    int length = 1;
    double amplitude = 1.0;
    std::uint64_t seed = 0;
    Vec base;  // constant_plus_random offset per channel; empty means zero

    void validate() const;
};

// Deterministic given the seed. PRBS takes values +-amplitude; the multisine
// sums ceil(length/2) incommensurate sinusoids with seeded phases;
// constant_plus_random adds a uniform +-amplitude component to the base.
Mat generate_excitation(const ExcitationSpec& spec);

struct MinimalityReport {
    bool controllable = false;
    bool observable = false;
};

// Kalman rank tests on (A, [B E]) and (A, C).
MinimalityReport check_minimality(const LtiSystem& sys, const Tolerance& tol = {});

// Two-step response operator Theta mapping col(u_[t:t+1], d_[t:t+1], x_t) to
// col(u_[t:t+1], y_[t:t+1], x_[t:t+1]), and the row permutation P_R mapping
// col(v_t, x_t, v_{t+1}, x_{t+1}) onto the latter ordering. Used purely as an
// independent oracle for the data-block identity
//   [V_p; X_p; V_f; X_f] = P_R^{-1} Theta [U; D; X_p].
struct ThetaOracle {
    Mat theta;  // (2m+2p+2n) x (2m+2m_d+n)
    Mat p_r;    // permutation, (2(m+p)+2n) square
};

ThetaOracle build_theta(const LtiSystem& sys);

// Random minimal test systems: A rescaled to the requested spectral radius,
// dense random B, E, C, redrawn until the Kalman tests pass.
LtiSystem random_minimal_system(Rng& rng, int n, int m, int m_d, int p,
                                double rho_target = 0.95);

}  // namespace dduio
