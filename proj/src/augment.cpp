#include "gcs/augment.hpp"

#include "gcs/errors.hpp"

namespace gcs {

AugmentedPlant build_augmented(const ValidatedPlant& plant, double epsilon_S) {
    const PlantModel& mdl = plant.model();
    const int n = plant.n(), m = plant.m(), g = plant.g(), k = plant.k();

    AugmentedPlant aug;
    aug.n = n;
    aug.m = m;
    aug.g = g;
    aug.k = k;

    aug.Atil = Matrix::Zero(n + g, n + g);
    aug.Atil.topLeftCorner(n, n) = mdl.A;

    aug.B2u = Matrix::Zero(n + g, m + 2 * g);
    aug.B2u.topLeftCorner(n, m) = mdl.B2;
    aug.B2u.bottomRightCorner(g, g) = Matrix::Identity(g, g);

    for (int j = 0; j < k; ++j) {
        const auto& ch = mdl.uncertainty_channels[static_cast<size_t>(j)];
        const Eigen::Index p = ch.B1.cols();
        const Eigen::Index q = ch.C1.rows();
        Matrix B1 = Matrix::Zero(n + g, p);
        B1.topRows(n) = ch.B1;
        Matrix C1 = Matrix::Zero(q, n + g);
        C1.leftCols(n) = ch.C1;
        Matrix D1 = Matrix::Zero(q, m + 2 * g);
        D1.leftCols(m) = ch.D1;
        aug.B1til.push_back(std::move(B1));
        aug.C1til.push_back(std::move(C1));
        aug.D1til.push_back(std::move(D1));
    }

    const Matrix Sbase = epsilon_S * Matrix::Identity(n + g, n + g);
    for (int i = 0; i < g; ++i) {
        const auto& ch = mdl.nonlinear_channels[static_cast<size_t>(i)];
        Matrix B2i = Matrix::Zero(n + g, 2);
        B2i.col(0).head(n) = ch.B1bar.col(0);
        B2i(n + i, 1) = 1.0;  // copy state i is driven by mu_bar_i

        Matrix C2i = Matrix::Zero(2, n + g);
        C2i.row(0).head(n) = ch.C1bar.row(0);

        Matrix D2i = Matrix::Zero(2, m + 2 * g);
        D2i.row(0).head(m) = ch.D1bar.row(0);
        D2i(1, m + i) = 1.0;  // second row selects nu_tilde_i from u_tilde

        aug.B2til.push_back(std::move(B2i));
        aug.C2til.push_back(std::move(C2i));
        aug.D2til.push_back(std::move(D2i));
        aug.iqc.push_back(lift_iqcs(ch.N, Sbase));
    }
    return aug;
}

LiftedIqc lift_iqcs(const Matrix& N, const Matrix& Sbase) {
    if (N.rows() != 2 || N.cols() != 2) {
        throw DimensionMismatch("lift_iqcs: N", "2x2",
                                std::to_string(N.rows()) + "x" + std::to_string(N.cols()));
    }
    if ((N - N.transpose()).norm() > 1e-9 * (1.0 + N.norm())) {
        throw NotSymmetric("lift_iqcs: N");
    }
    // Coordinates (mu, mu_bar, nu, nu_tilde).
    Matrix E1(2, 4), E2(2, 4), E3(2, 4);
    E1 << 1, -1, 0, 0, 0, 0, 1, -1;
    E2 << 1, 0, 0, 0, 0, 0, 1, 0;
    E3 << 0, 1, 0, 0, 0, 0, 0, 1;

    LiftedIqc out;
    out.M[0] = E1.transpose() * N * E1;
    out.M[1] = E2.transpose() * N * E2;
    out.M[2] = E3.transpose() * N * E3;
    out.S = {Sbase, Sbase, Sbase};
    return out;
}

CombinedIqc combine_multipliers(const LiftedIqc& lifted,
                                const std::array<double, 3>& lambda) {
    for (double l : lambda) {
        if (l < 0.0) {
            throw std::invalid_argument("combine_multipliers: lambda components must be >= 0");
        }
    }
    if (lambda[0] == 0.0 && lambda[1] == 0.0 && lambda[2] == 0.0) {
        throw AllZeroMultiplier("combine_multipliers: lambda = (0, 0, 0)");
    }
    CombinedIqc out;
    out.M = lambda[0] * lifted.M[0] + lambda[1] * lifted.M[1] + lambda[2] * lifted.M[2];
    out.S = lambda[0] * lifted.S[0] + lambda[1] * lifted.S[1] + lambda[2] * lifted.S[2];
    return out;
}

}  // namespace gcs
