#pragma once

#include <complex>
#include <vector>

#include "dduio/matrix.hpp"

namespace dduio {

// Shared numerical thresholds. The rank cutoff applied to a matrix M is
//   sigma_j kept  iff  sigma_j > max(rank_rel * max(rows, cols) * sigma_max,
//                                    abs_floor)
// and the same cutoff feeds pinv, null_space_basis and numerical_rank so the
// three stay mutually consistent.
struct Tolerance {
    double rank_rel = 1e-10;
    double abs_floor = 1e-12;
    double schur_margin = 1e-9;

    void validate() const
    {
        if (!(rank_rel > 0.0) || !(abs_floor > 0.0) || !(schur_margin > 0.0))
            throw data_error("tolerances must be strictly positive");
        if (!(rank_rel < 1.0)) throw data_error("rank_rel must be < 1");
    }
};

// Singular value decomposition M = U diag(sigma) V^T via one-sided Jacobi.
// sigma has cols(M) entries sorted descending (zero-padded past min(r,c));
// u is rows x cols with orthonormal columns wherever sigma_j > 0; v is the
// full cols x cols orthogonal factor, so its trailing columns span the
// kernel.
struct Svd {
    Mat u;
    std::vector<double> sigma;
    Mat v;

    double rank_cutoff(const Tolerance& tol) const;
    int rank(const Tolerance& tol) const;
};

Svd svd(const Mat& m);

// Moore-Penrose pseudoinverse; singular values at or below the shared cutoff
// are treated as zero. The Svd overload reuses an existing decomposition.
Mat pinv(const Mat& m, const Tolerance& tol = {});
Mat pinv(const Svd& dec, const Tolerance& tol = {});

// Orthonormal basis of the numerical kernel as columns; 0 columns when the
// kernel is trivial.
Mat null_space_basis(const Mat& m, const Tolerance& tol = {});

int numerical_rank(const Mat& m, const Tolerance& tol = {});

// Eigenvalues of a real square matrix (balanced Hessenberg reduction +
// Francis double-shift QR). Order is unspecified.
std::vector<std::complex<double>> eigenvalues(const Mat& a);

double spectral_radius(const Mat& a);

// Strict Schur stability test: spectral_radius < 1 - schur_margin, so
// marginally stable matrices are rejected.
bool is_schur(const Mat& a, const Tolerance& tol = {});

// Matrix exponential by scaling-and-squaring with a degree-13 Pade
// approximant.
Mat expm(const Mat& a);

// Exact (zero-order-hold) discretization of  xdot = A_c x + E_c d  over one
// sampling period: A = e^{A_c Ts}, E = (int_0^Ts e^{A_c tau} dtau) E_c,
// computed jointly from the exponential of the augmented matrix
// [[A_c, E_c], [0, 0]] * Ts so singular A_c needs no special case.
struct Discretization {
    Mat a;
    Mat e;
};
Discretization discretize_exact(const Mat& a_c, const Mat& e_c, double t_s);

// Solve A X = B with partial-pivot LU; throws numerics_error when A is
// numerically singular.
Mat solve(const Mat& a, const Mat& b);

}  // namespace dduio
