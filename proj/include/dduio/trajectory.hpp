#pragma once

#include <cstdint>
#include <string>

#include "dduio/linalg.hpp"
#include "dduio/matrix.hpp"

namespace dduio {

struct TrajectoryMeta {
    std::uint64_t seed = 0;
    double t_s = 0.0;  // 0 when not a sampled physical system
    std::string label;
};

// One experiment: time-indexed known inputs u, unknown inputs d, states x,
// outputs y, stored one signal per matrix with column t holding the sample
// at time t. Any of the dimensions may be zero. d is recorded in historical
// experiments only and is never visible to the estimator API; x may be
// absent in online data shipped to the estimator.
struct Trajectory {
    int n = 0;
    int m = 0;
    int p = 0;
    int m_d = 0;
    Mat u;  // m x T
    Mat d;  // m_d x T, meaningful only when has_d
    Mat x;  // n x T, meaningful only when has_x
    Mat y;  // p x T
    bool has_d = false;
    bool has_x = true;
    TrajectoryMeta meta;

    int length() const { return y.cols(); }

    // stacked v_t = [u_t; y_t], (m+p) x T
    Mat v() const;

    // stacked [u; d], (m+m_d) x T; requires has_d (m_d == 0 counts as
    // trivially recorded)
    Mat ud() const;

    void validate() const;
};

// Block-partitioned historical data with T_ini = T_f = 1: depth-2 Hankel
// matrices of v and x split into one past and one future block row each,
// plus the depth-2 Hankels of u and d used by the rank identities.
struct HankelBlocks {
    Mat u_h;  // 2m x (T-1)
    Mat d_h;  // 2*m_d x (T-1), meaningful only when has_d
    Mat v_p;  // (m+p) x (T-1)
    Mat x_p;  // n x (T-1)
    Mat v_f;  // (m+p) x (T-1)
    Mat x_f;  // n x (T-1)
    bool has_d = false;
    int n = 0;
    int m = 0;
    int p = 0;
    int m_d = 0;
    int t_len = 0;                               // source trajectory length T
    CheckState pe = CheckState::not_checkable;   // Assumption-1 verdict

    int cols() const { return v_p.cols(); }

    // [V_p; X_p; V_f] and [V_p; X_p; V_f; X_f]
    Mat stack3() const;
    Mat stack4() const;

    std::uint64_t digest() const;
};

// Block Hankel matrix of the given depth: block (r, c) is column c+r of the
// signal; qL x (T-L+1).
Mat hankel(const Mat& signal, int depth);

// Full row rank of the depth-L Hankel matrix. A zero-dimensional signal is
// trivially exciting of every order.
bool is_persistently_exciting(const Mat& signal, int order,
                              const Tolerance& tol = {});

// PE of col(u, d) of order n+2 (Assumption 1). not_checkable when unknown
// inputs exist but were not recorded.
CheckState check_assumption1(const Trajectory& traj, const Tolerance& tol = {});

HankelBlocks build_blocks(const Trajectory& traj, const Tolerance& tol = {});

// Minimum experiment length for which PE of order n+2 of an
// (m+m_d)-dimensional signal is possible at all, and the default with slack
// to absorb unlucky draws.
int min_historical_length(int n, int m, int m_d);
int default_historical_length(int n, int m, int m_d);

}  // namespace dduio
