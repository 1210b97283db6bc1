#include "gcs/riccati.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "gcs/errors.hpp"

namespace gcs {

TauSystem assemble(const CheckSystem& check, const MultiplierPoint& point,
                   const Matrix& R, const Matrix& G) {
    const int k = check.k, g = check.g;
    if (static_cast<int>(point.tau.size()) != k) {
        throw DimensionMismatch("assemble: point.tau", std::to_string(k),
                                std::to_string(point.tau.size()));
    }
    for (double t : point.tau) {
        if (!(t > 0.0)) {
            throw std::invalid_argument("assemble: tau must be > 0");
        }
    }
    const Eigen::Index ns = check.Acheck.rows();     // n + g
    const Eigen::Index mu = check.B2ucheck.cols();   // m + 2g

    Eigen::Index rows = ns + mu;
    for (int j = 0; j < k; ++j) rows += check.C1til[static_cast<size_t>(j)].rows();
    rows += 2 * g;
    Eigen::Index dist_cols = 0;
    for (int j = 0; j < k; ++j) dist_cols += check.B1til[static_cast<size_t>(j)].cols();
    dist_cols += 2 * g;

    TauSystem tausys;
    tausys.Ctau = Matrix::Zero(rows, ns);
    tausys.Dtau = Matrix::Zero(rows, mu);
    tausys.B2tau = Matrix::Zero(ns, dist_cols);

    Eigen::Index r = 0;
    tausys.Ctau.topRows(ns) = sqrt_psd(R);
    r += ns;
    tausys.Dtau.middleRows(r, mu) = sqrt_psd(G);
    r += mu;
    Eigen::Index c = 0;
    for (int j = 0; j < k; ++j) {
        const double st = std::sqrt(point.tau[static_cast<size_t>(j)]);
        const Matrix& C1 = check.C1til[static_cast<size_t>(j)];
        const Matrix& D1 = check.D1til[static_cast<size_t>(j)];
        const Matrix& B1 = check.B1til[static_cast<size_t>(j)];
        tausys.Ctau.middleRows(r, C1.rows()) = st * C1;
        tausys.Dtau.middleRows(r, D1.rows()) = st * D1;
        r += C1.rows();
        tausys.B2tau.middleCols(c, B1.cols()) = B1 / st;
        c += B1.cols();
    }
    for (int i = 0; i < g; ++i) {
        tausys.Ctau.middleRows(r, 2) = check.C2check[static_cast<size_t>(i)];
        tausys.Dtau.middleRows(r, 2) = check.D2check[static_cast<size_t>(i)];
        r += 2;
        tausys.B2tau.middleCols(c, 2) = check.B2check[static_cast<size_t>(i)];
        c += 2;
    }

    tausys.Gtau = tausys.Dtau.transpose() * tausys.Dtau;
    tausys.Gtau = 0.5 * (tausys.Gtau + tausys.Gtau.transpose().eval());
    const SymEig geig = sym_eig(tausys.Gtau);
    if (geig.values(0) <= 1e-12 * std::max(1.0, geig.values(geig.values.size() - 1))) {
        throw GtauSingular("Gtau smallest eigenvalue " + std::to_string(geig.values(0)));
    }
    return tausys;
}

SynthesisResult synthesize(const TauSystem& tausys, const CheckSystem& check) {
    const Matrix Gti = tausys.Gtau.inverse();
    const Matrix DtC = tausys.Dtau.transpose() * tausys.Ctau;
    const Matrix Ac = check.Acheck - check.B2ucheck * Gti * DtC;
    const Eigen::Index rows = tausys.Dtau.rows();
    const Matrix Q = tausys.Ctau.transpose() *
                     (Matrix::Identity(rows, rows) -
                      tausys.Dtau * Gti * tausys.Dtau.transpose()) *
                     tausys.Ctau;
    const Matrix Rq = tausys.B2tau * tausys.B2tau.transpose() -
                      check.B2ucheck * Gti * check.B2ucheck.transpose();

    const AreSolution are = solve_game_are(Ac, Rq, Q);
    const SymEig xeig = sym_eig(are.X);
    if (xeig.values(0) < -1e-9 * (1.0 + are.X.norm())) {
        throw XNotPSD("X smallest eigenvalue " + std::to_string(xeig.values(0)));
    }

    SynthesisResult result;
    result.X = are.X;
    result.K = -Gti * (check.B2ucheck.transpose() * are.X + DtC);
    result.diagnostics.are_residual = are.residual;
    result.diagnostics.d11_margins = check.d11_margin;

    Eigen::EigenSolver<Matrix> cl(check.Acheck + check.B2ucheck * result.K);
    result.diagnostics.closed_loop_spectrum = cl.eigenvalues();
    for (Eigen::Index i = 0; i < result.diagnostics.closed_loop_spectrum.size(); ++i) {
        if (result.diagnostics.closed_loop_spectrum(i).real() >= 0.0) {
            throw NoStabilizingSolution("gain does not stabilize the shifted system");
        }
    }
    return result;
}

double cost_bound(const Matrix& X, const MultiplierPoint& point,
                  const std::vector<Matrix>& S1pad, const std::vector<Matrix>& Scomb,
                  const Vector& x0aug) {
    double v = x0aug.dot(X * x0aug);
    for (size_t j = 0; j < S1pad.size(); ++j) {
        v += point.tau[j] * x0aug.dot(S1pad[j] * x0aug);
    }
    for (const Matrix& S : Scomb) {
        v += x0aug.dot(S * x0aug);
    }
    return v;
}

}  // namespace gcs
