#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "dduio/linalg.hpp"
#include "dduio/trajectory.hpp"

namespace dduio {

// Raised when synthesis is asked to produce an estimator but the existence
// conditions fail. Maps to CLI exit code 2.
struct no_uio_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solution operator for the data equation [V_p; X_p; V_f] g = col(v_t, x_t,
// v_{t+1}), realized as the pseudoinverse of the stacked blocks and split
// column-wise into the parts acting on v_t, x_t and v_{t+1}.
struct XiPartition {
    Mat xi;  // (T-1) x (2(m+p)+n)
    int mp = 0;
    int n = 0;

    Mat vp_part() const { return xi.block(0, 0, xi.rows(), mp); }
    Mat xp_part() const { return xi.block(0, mp, xi.rows(), n); }
    Mat vf_part() const { return xi.block(0, mp + n, xi.rows(), mp); }
};

// Observer realization synthesized from data:
//   z_{t+1} = A z_t + B v_t,  xhat_t = z_t + D v_t
// together with the one-step estimator gain X_f Xi applied to
// col(v_t, xhat_t, v_{t+1}).
struct UioRealization {
    Mat a_uio;  // n x n
    Mat b_uio;  // n x (m+p)
    Mat d_uio;  // n x (m+p)
    Mat gain;   // n x (2(m+p)+n)
    int n = 0;
    int mp = 0;
    std::uint64_t source_digest = 0;
    Tolerance tol;
};

// Diagnostics behind the existence verdict: the kernel-inclusion condition,
// the rank bookkeeping both routes rely on, and the Schur test of A_uio.
// exists == kernel_inclusion && schur.
struct ExistenceReport {
    bool kernel_inclusion = false;
    int rank_stack3 = 0;
    int rank_stack4 = 0;
    double spectral_radius_a_uio = 0.0;
    bool schur = false;
    CheckState pe = CheckState::not_checkable;
    bool exists = false;
    double cond_stack3 = 0.0;  // sigma_max / sigma_rank of [V_p; X_p; V_f]
    Tolerance tol;
    std::uint64_t source_digest = 0;
};

struct SynthesisResult {
    UioRealization realization;
    ExistenceReport report;
};

XiPartition compute_xi(const HankelBlocks& blocks, const Tolerance& tol = {});

// ker([V_p; X_p; V_f]) subseteq ker(X_f), established by two independent
// routes that must agree: (a) rank of the 3-stack equals rank of the 4-stack
// including X_f, (b) X_f annihilates an orthonormal kernel basis of the
// 3-stack. Disagreement raises numerics_error.
bool check_kernel_inclusion(const HankelBlocks& blocks, const Tolerance& tol = {});

// Full synthesis: Xi, observer matrices, gain, and the existence report.
// Always returns the realization, also when exists is false, so callers can
// inspect what failed.
SynthesisResult synthesize(const HankelBlocks& blocks, const Tolerance& tol = {});

enum class XiIndependence { confirmed, violated, not_applicable };

// Perturbs Xi by a random matrix ranging inside ker([V_p; X_p; V_f]) and
// recomputes the observer matrices; confirmed when all three are unchanged
// to 1e-8 relative. not_applicable when the kernel-inclusion condition does
// not hold (the invariance claim presumes it).
XiIndependence xi_independence_check(const HankelBlocks& blocks,
                                     const Tolerance& tol, std::uint64_t seed);

// xhat_{t+1} = gain * col(v_t, xhat_t, v_{t+1})
Vec estimate_step(const UioRealization& r, const Vec& xhat, const Vec& v_t,
                  const Vec& v_next);

// Iterates estimate_step over the columns of v ((m+p) x N); returns the
// n x N estimate sequence starting at xhat0.
Mat run_estimator(const UioRealization& r, const Vec& xhat0, const Mat& v);

// Membership test for the compatible-trajectory set: relative least-squares
// residual of col(v_t, x_t, v_{t+1}, x_{t+1}) against the range of the
// 4-stack.
bool verify_compatibility(const HankelBlocks& blocks, const Vec& v_t,
                          const Vec& x_t, const Vec& v_next, const Vec& x_next,
                          const Tolerance& tol = {},
                          double rel_residual_tol = 1e-8);

// JSON (de)serialization of realizations and reports.
std::string realization_to_json(const UioRealization& r);
UioRealization realization_from_json(const std::string& text);
void write_realization(const std::filesystem::path& path, const UioRealization& r);
UioRealization read_realization(const std::filesystem::path& path);
std::string report_to_json(const ExistenceReport& rep);

}  // namespace dduio
