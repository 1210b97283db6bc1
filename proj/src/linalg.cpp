#include "gcs/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace gcs {

namespace {

Matrix symmetrized(const Matrix& S, const char* what) {
    if (S.rows() != S.cols()) {
        throw NonSquare(std::string(what) + ": " + std::to_string(S.rows()) + "x" +
                        std::to_string(S.cols()));
    }
    const double asym = (S - S.transpose()).norm();
    if (asym > 1e-9 * S.norm()) {
        throw NotSymmetric(std::string(what) + ": |S - S'|_F = " + std::to_string(asym));
    }
    return 0.5 * (S + S.transpose());
}

// Largest-magnitude component positive; first index wins ties.
void fix_vector_signs(Matrix& V) {
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
        Eigen::Index imax = 0;
        double best = std::abs(V(0, j));
        for (Eigen::Index i = 1; i < V.rows(); ++i) {
            if (std::abs(V(i, j)) > best) {
                best = std::abs(V(i, j));
                imax = i;
            }
        }
        if (V(imax, j) < 0.0) V.col(j) = -V.col(j);
    }
}

// Within groups of exactly equal eigenvalues, order columns by the index of
// their largest-magnitude component so exact-diagonal inputs come out as I.
void order_tied_columns(Vector& values, Matrix& V) {
    const Eigen::Index n = values.size();
    Eigen::Index start = 0;
    while (start < n) {
        Eigen::Index end = start + 1;
        while (end < n && values(end) == values(start)) ++end;
        if (end - start > 1) {
            std::vector<Eigen::Index> idx(static_cast<size_t>(end - start));
            std::iota(idx.begin(), idx.end(), start);
            auto argmax = [&](Eigen::Index col) {
                Eigen::Index imax = 0;
                double best = std::abs(V(0, col));
                for (Eigen::Index i = 1; i < V.rows(); ++i) {
                    if (std::abs(V(i, col)) > best) {
                        best = std::abs(V(i, col));
                        imax = i;
                    }
                }
                return imax;
            };
            std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
                return argmax(a) < argmax(b);
            });
            Matrix cols(V.rows(), end - start);
            for (Eigen::Index j = 0; j < end - start; ++j) cols.col(j) = V.col(idx[static_cast<size_t>(j)]);
            V.middleCols(start, end - start) = cols;
        }
        start = end;
    }
}

}  // namespace

SymEig sym_eig(const Matrix& S) {
    const Matrix A = symmetrized(S, "sym_eig");
    Eigen::SelfAdjointEigenSolver<Matrix> es(A);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("sym_eig: eigensolver failed to converge");
    }
    SymEig out;
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
    fix_vector_signs(out.vectors);
    order_tied_columns(out.values, out.vectors);
    return out;
}

Inertia inertia(const Matrix& S, double zero_tol) {
    if (zero_tol < 0.0) {
        throw std::invalid_argument("inertia: zero_tol must be >= 0");
    }
    const SymEig eig = sym_eig(S);
    Inertia out;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
        const double v = eig.values(i);
        if (v < -zero_tol) {
            ++out.n_neg;
        } else if (v <= zero_tol) {
            ++out.n_zero;
        } else {
            ++out.n_pos;
        }
    }
    return out;
}

bool is_pos_def(const Matrix& S, double margin) {
    const SymEig eig = sym_eig(S);
    return eig.values(0) > margin;
}

Matrix sqrt_psd(const Matrix& S) {
    const SymEig eig = sym_eig(S);
    const Vector r = eig.values.cwiseMax(0.0).cwiseSqrt();
    return eig.vectors * r.asDiagonal() * eig.vectors.transpose();
}

Matrix inv_sqrt_pd(const Matrix& S) {
    const SymEig eig = sym_eig(S);
    if (eig.values(0) <= 0.0) {
        throw NotPositiveDefinite("inv_sqrt_pd");
    }
    const Vector r = eig.values.cwiseSqrt().cwiseInverse();
    return eig.vectors * r.asDiagonal() * eig.vectors.transpose();
}

AreSolution solve_game_are(const Matrix& Ac, const Matrix& Rq, const Matrix& Q) {
    if (Ac.rows() != Ac.cols()) {
        throw NonSquare("solve_game_are: Ac");
    }
    const Eigen::Index n = Ac.rows();
    const Matrix Rqs = symmetrized(Rq, "solve_game_are: Rq");
    const Matrix Qs = symmetrized(Q, "solve_game_are: Q");

    Matrix H(2 * n, 2 * n);
    H.topLeftCorner(n, n) = Ac;
    H.topRightCorner(n, n) = Rqs;
    H.bottomLeftCorner(n, n) = -Qs;
    H.bottomRightCorner(n, n) = -Ac.transpose();

    Eigen::EigenSolver<Matrix> es(H);
    if (es.info() != Eigen::Success) {
        throw NoStabilizingSolution("Hamiltonian eigensolver failed");
    }
    std::vector<Eigen::Index> stable;
    for (Eigen::Index i = 0; i < 2 * n; ++i) {
        if (es.eigenvalues()(i).real() < 0.0) stable.push_back(i);
    }
    if (static_cast<Eigen::Index>(stable.size()) != n) {
        throw NoStabilizingSolution("Hamiltonian has eigenvalues on the imaginary axis");
    }
    Eigen::MatrixXcd U(2 * n, n);
    for (Eigen::Index j = 0; j < n; ++j) U.col(j) = es.eigenvectors().col(stable[static_cast<size_t>(j)]);
    const Eigen::MatrixXcd U1 = U.topRows(n);
    const Eigen::MatrixXcd U2 = U.bottomRows(n);

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(U1);
    if (!lu.isInvertible()) {
        throw NoStabilizingSolution("stable subspace has singular upper block");
    }
    const Eigen::MatrixXcd Xc = U2 * lu.solve(Eigen::MatrixXcd::Identity(n, n));

    AreSolution sol;
    sol.X = Xc.real();
    sol.X = 0.5 * (sol.X + sol.X.transpose().eval());
    if (Xc.imag().norm() > 1e-8 * (1.0 + sol.X.norm())) {
        throw NoStabilizingSolution("stable subspace is not real");
    }
    sol.residual =
        (Ac.transpose() * sol.X + sol.X * Ac + sol.X * Rqs * sol.X + Qs).norm();
    if (sol.residual > 1e-8 * (1.0 + sol.X.norm())) {
        throw NoStabilizingSolution("ARE residual " + std::to_string(sol.residual));
    }
    Eigen::EigenSolver<Matrix> cl(Ac + Rqs * sol.X);
    sol.closed_loop_spectrum = cl.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (sol.closed_loop_spectrum(i).real() >= 0.0) {
            throw NoStabilizingSolution("closed-loop spectrum touches the imaginary axis");
        }
    }
    return sol;
}

Matrix solve_lyapunov(const Matrix& Acl, const Matrix& Q) {
    if (Acl.rows() != Acl.cols()) {
        throw NonSquare("solve_lyapunov: Acl");
    }
    const Eigen::Index n = Acl.rows();
    const Matrix Qs = symmetrized(Q, "solve_lyapunov: Q");
    {
        Eigen::EigenSolver<Matrix> es(Acl);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (es.eigenvalues()(i).real() >= 0.0) {
                throw NotHurwitz("solve_lyapunov: Acl has an eigenvalue with Re >= 0");
            }
        }
    }
    // (I (x) A' + A' (x) I) vec(P) = -vec(Q), column-major vec.
    Matrix K = Matrix::Zero(n * n, n * n);
    const Matrix At = Acl.transpose();
    for (Eigen::Index c = 0; c < n; ++c) {
        K.block(c * n, c * n, n, n) += At;
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index i = 0; i < n; ++i) {
                K(c * n + i, r * n + i) += At(c, r);
            }
        }
    }
    Vector q(n * n);
    for (Eigen::Index c = 0; c < n; ++c) q.segment(c * n, n) = -Qs.col(c);
    const Vector p = K.partialPivLu().solve(q);
    Matrix P(n, n);
    for (Eigen::Index c = 0; c < n; ++c) P.col(c) = p.segment(c * n, n);
    P = 0.5 * (P + P.transpose().eval());
    const double res = (Acl.transpose() * P + P * Acl + Qs).norm();
    if (res > 1e-9 * (1.0 + P.norm())) {
        throw std::runtime_error("solve_lyapunov: residual " + std::to_string(res));
    }
    return P;
}

}  // namespace gcs
