#pragma once

#include <functional>
#include <random>

#include "gcs/model.hpp"
#include "gcs/types.hpp"

namespace gcs::test {

inline Matrix random_matrix(std::mt19937& rng, Eigen::Index rows, Eigen::Index cols,
                            double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Matrix M(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) M(r, c) = dist(rng);
    }
    return M;
}

inline Matrix random_symmetric(std::mt19937& rng, Eigen::Index n, double scale = 1.0) {
    const Matrix M = random_matrix(rng, n, n, scale);
    return 0.5 * (M + M.transpose());
}

inline Matrix random_orthogonal(std::mt19937& rng, Eigen::Index n) {
    const Matrix M = random_matrix(rng, n, n);
    Eigen::HouseholderQR<Matrix> qr(M);
    Matrix Q = qr.householderQ();
    const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (R(i, i) < 0) Q.col(i) = -Q.col(i);
    }
    return Q;
}

inline Matrix random_spd(std::mt19937& rng, Eigen::Index n) {
    const Matrix M = random_matrix(rng, n, n);
    return M * M.transpose() + 0.1 * Matrix::Identity(n, n);
}

inline Matrix random_hurwitz(std::mt19937& rng, Eigen::Index n, double margin = 0.5) {
    Matrix A = random_matrix(rng, n, n);
    const double shift = A.eigenvalues().real().maxCoeff() + margin;
    A -= shift * Matrix::Identity(n, n);
    return A;
}

/// Symmetric 4x4 with inertia (2, 0, 2) by construction.
inline Matrix random_feasible_multiplier(std::mt19937& rng) {
    std::uniform_real_distribution<double> mag(0.2, 3.0);
    Vector d(4);
    d << -mag(rng), -mag(rng), mag(rng), mag(rng);
    const Matrix Q = random_orthogonal(rng, 4);
    return Q * d.asDiagonal() * Q.transpose();
}

/// 2x2 matrix with spectral norm drawn from (0.05, 0.95).
inline Matrix random_contraction(std::mt19937& rng) {
    std::uniform_real_distribution<double> s(0.05, 0.95);
    Matrix D = random_matrix(rng, 2, 2);
    const double top = D.jacobiSvd().singularValues()(0);
    return D * (s(rng) / top);
}

/// Classical RK4 over [0, t_final] with fixed step; f(z, t) -> dz.
inline Vector rk4(const std::function<Vector(const Vector&, double)>& f, Vector z,
                  double dt, double t_final,
                  const std::function<void(double, const Vector&)>& observer = {}) {
    const auto steps = static_cast<long>(std::llround(t_final / dt));
    if (observer) observer(0.0, z);
    for (long s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * dt;
        const Vector k1 = f(z, t);
        const Vector k2 = f(z + 0.5 * dt * k1, t + 0.5 * dt);
        const Vector k3 = f(z + 0.5 * dt * k2, t + 0.5 * dt);
        const Vector k4 = f(z + dt * k3, t + dt);
        z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (observer) observer(static_cast<double>(s + 1) * dt, z);
    }
    return z;
}

/// Axial-compressor surge model with the monotone cubic channel and the
/// unit-gain uncertainty on the second state.
inline PlantModel surge_plant() {
    PlantModel mdl;
    mdl.A = (Matrix(2, 2) << 1.5, -1.0, 0.0, 0.0).finished();
    mdl.B2 = (Matrix(2, 1) << 0.0, 1.0).finished();
    NonlinearChannel nl;
    nl.B1bar = (Matrix(2, 1) << -1.0, 0.0).finished();
    nl.C1bar = (Matrix(1, 2) << 1.0, 0.0).finished();
    nl.D1bar = Matrix::Zero(1, 1);
    nl.N = (Matrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
    nl.psi_poly = (Vector(4) << 0.0, 1.5, 1.5, 0.5).finished();
    mdl.nonlinear_channels = {nl};
    UncertaintyChannel unc;
    unc.B1 = (Matrix(2, 1) << 0.0, 1.0).finished();
    unc.C1 = (Matrix(1, 2) << 0.1, 0.0).finished();
    unc.D1 = Matrix::Zero(1, 1);
    unc.M = (Matrix(2, 2) << -1.0, 0.0, 0.0, 1.0).finished();
    unc.S = 1e-6 * Matrix::Identity(2, 2);
    mdl.uncertainty_channels = {unc};
    mdl.R = Matrix::Identity(3, 3);
    mdl.G = Matrix::Identity(3, 3);
    mdl.x0 = (Vector(2) << 1.0, 0.0).finished();
    return mdl;
}

/// Variant of the surge model whose channel slope lives in [1.6, 2.4]; every
/// pipeline stage is feasible for a wide multiplier range.
inline PlantModel surge_sector_plant() {
    PlantModel mdl = surge_plant();
    auto& nl = mdl.nonlinear_channels[0];
    nl.B1bar = (Matrix(2, 1) << -0.3, 0.0).finished();
    nl.N = (Matrix(2, 2) << -1.0, 2.0, 2.0, -3.84).finished();
    nl.psi_poly = (Vector(2) << 0.0, 2.0).finished();
    return mdl;
}

/// n=3, m=2, g=2, k=2 plant exercising the multi-channel stacking, including
/// a non-square uncertainty channel (p=2, q=1).
inline PlantModel multichannel_plant() {
    PlantModel mdl;
    mdl.A = (Matrix(3, 3) << -0.5, 1.0, 0.0, -1.0, -0.2, 0.5, 0.0, -0.3, -1.0).finished();
    mdl.B2 = (Matrix(3, 2) << 0.0, 0.2, 1.0, 0.0, 0.0, 1.0).finished();

    NonlinearChannel nl1;
    nl1.B1bar = (Matrix(3, 1) << -0.2, 0.0, 0.0).finished();
    nl1.C1bar = (Matrix(1, 3) << 1.0, 0.0, 0.0).finished();
    nl1.D1bar = Matrix::Zero(1, 2);
    nl1.N = (Matrix(2, 2) << -1.0, 2.0, 2.0, -3.84).finished();
    nl1.psi_poly = (Vector(2) << 0.0, 2.0).finished();
    NonlinearChannel nl2;
    nl2.B1bar = (Matrix(3, 1) << 0.0, -0.1, 0.0).finished();
    nl2.C1bar = (Matrix(1, 3) << 0.0, 1.0, 0.0).finished();
    nl2.D1bar = (Matrix(1, 2) << 0.1, 0.0).finished();
    nl2.N = (Matrix(2, 2) << -1.0, 1.0, 1.0, -0.96).finished();
    nl2.psi_poly = (Vector(2) << 0.0, 1.0).finished();
    mdl.nonlinear_channels = {nl1, nl2};

    UncertaintyChannel u1;
    u1.B1 = (Matrix(3, 1) << 0.0, 1.0, 0.0).finished();
    u1.C1 = (Matrix(1, 3) << 0.1, 0.0, 0.0).finished();
    u1.D1 = Matrix::Zero(1, 2);
    u1.M = (Matrix(2, 2) << -1.0, 0.0, 0.0, 1.0).finished();
    u1.S = 1e-6 * Matrix::Identity(3, 3);
    UncertaintyChannel u2;
    u2.B1 = (Matrix(3, 2) << 0.2, 0.0, 0.0, 0.0, 0.0, 0.3).finished();
    u2.C1 = (Matrix(1, 3) << 0.0, 0.0, 0.5).finished();
    u2.D1 = Matrix::Zero(1, 2);
    u2.M = (Matrix(3, 3) << -1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 1.0).finished();
    u2.S = 1e-6 * Matrix::Identity(3, 3);
    mdl.uncertainty_channels = {u1, u2};

    mdl.R = Matrix::Identity(5, 5);
    mdl.G = Matrix::Identity(6, 6);
    mdl.x0 = (Vector(3) << 1.0, -0.5, 0.5).finished();
    return mdl;
}

}  // namespace gcs::test
