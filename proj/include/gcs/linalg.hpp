#pragma once

#include "gcs/errors.hpp"
#include "gcs/types.hpp"

namespace gcs {

/// Eigendecomposition of a symmetric matrix with a fixed deterministic
/// convention: values ascending, and each eigenvector's largest-magnitude
/// component made positive (first index wins ties). Column j pairs with
/// values[j].
struct SymEig {
    Vector values;
    Matrix vectors;
};

/// Decomposes S (symmetrized on entry; relative asymmetry above 1e-9 is an
/// error). Reconstruction satisfies |V diag(v) V' - S|_F <= 1e-10 (1 + |S|_F).
SymEig sym_eig(const Matrix& S);

struct Inertia {
    int n_neg = 0;
    int n_zero = 0;
    int n_pos = 0;
};

/// Counts eigenvalues below -zero_tol, within +/-zero_tol, above zero_tol.
Inertia inertia(const Matrix& S, double zero_tol);

/// True iff the smallest eigenvalue of S exceeds margin.
bool is_pos_def(const Matrix& S, double margin);

/// Unique PSD square root (tiny negative eigenvalues clamped to zero).
Matrix sqrt_psd(const Matrix& S);

/// Inverse square root of a positive definite matrix.
Matrix inv_sqrt_pd(const Matrix& S);

struct AreSolution {
    Matrix X;                         // symmetric stabilizing solution
    double residual = 0.0;            // |Ac'X + X Ac + X Rq X + Q|_F
    ComplexVector closed_loop_spectrum;  // eigenvalues of Ac + Rq X
};

/// Solves Ac'X + X Ac + X Rq X + Q = 0 for the stabilizing solution via the
/// stable invariant subspace of the Hamiltonian [[Ac, Rq], [-Q, -Ac']].
/// Throws NoStabilizingSolution when the Hamiltonian has imaginary-axis
/// eigenvalues, the subspace upper block is singular, or the candidate fails
/// the residual bound 1e-8 (1 + |X|_F).
AreSolution solve_game_are(const Matrix& Ac, const Matrix& Rq, const Matrix& Q);

/// Solves Acl'P + P Acl + Q = 0 for Hurwitz Acl (dense Kronecker solve).
Matrix solve_lyapunov(const Matrix& Acl, const Matrix& Q);

}  // namespace gcs
