#include "gcs/sfactor.hpp"

#include <cmath>
#include <string>

#include "gcs/errors.hpp"
#include "gcs/linalg.hpp"

namespace gcs {

namespace {
constexpr double kZeroTol = 1e-9;

Matrix inverse_2x2(const Matrix& T11) {
    const double det = T11(0, 0) * T11(1, 1) - T11(0, 1) * T11(1, 0);
    const double scale = T11.squaredNorm();
    if (std::abs(det) <= 1e-12 * scale) {
        throw SingularT11("T11 determinant " + std::to_string(det));
    }
    Matrix inv(2, 2);
    inv << T11(1, 1), -T11(0, 1), -T11(1, 0), T11(0, 0);
    return inv / det;
}
}  // namespace

FeasibilityCheck check_conditions(const Matrix& Mcomb) {
    if (Mcomb.rows() != 4 || Mcomb.cols() != 4) {
        throw DimensionMismatch("check_conditions: Mcomb", "4x4",
                                std::to_string(Mcomb.rows()) + "x" +
                                    std::to_string(Mcomb.cols()));
    }
    const SymEig eig = sym_eig(Mcomb);
    FeasibilityCheck out;
    for (Eigen::Index i = 0; i < 4; ++i) {
        if (eig.values(i) < -kZeroTol) {
            ++out.pi_count;
        } else if (eig.values(i) <= kZeroTol) {
            ++out.n_zero;
        }
    }
    const Matrix U11 = eig.vectors.topLeftCorner(2, 2);
    out.detU11 = U11(0, 0) * U11(1, 1) - U11(0, 1) * U11(1, 0);
    out.feasible =
        out.pi_count == 2 && out.n_zero == 0 && std::abs(out.detU11) > kZeroTol;
    return out;
}

Congruence build_congruence(const Matrix& Mcomb) {
    const FeasibilityCheck check = check_conditions(Mcomb);
    if (!check.feasible) {
        if (check.pi_count != 2 || check.n_zero != 0) {
            throw Infeasible("wrong inertia: " + std::to_string(check.pi_count) +
                             " negative, " + std::to_string(check.n_zero) + " zero");
        }
        throw Infeasible("singular U11: det " + std::to_string(check.detU11));
    }
    const SymEig eig = sym_eig(Mcomb);
    const Vector scale = eig.values.cwiseAbs().cwiseSqrt();
    Congruence cong;
    cong.T = eig.vectors * scale.cwiseInverse().asDiagonal();
    cong.Tinv = scale.asDiagonal() * eig.vectors.transpose();
    cong.pi_count = check.pi_count;
    cong.detU11 = check.detU11;
    return cong;
}

BarSystem transform_system(const AugmentedPlant& aug,
                           const std::vector<Congruence>& cong) {
    if (static_cast<int>(cong.size()) != aug.g) {
        throw DimensionMismatch("transform_system: cong", std::to_string(aug.g),
                                std::to_string(cong.size()));
    }
    BarSystem bar;
    bar.n = aug.n;
    bar.m = aug.m;
    bar.g = aug.g;
    bar.k = aug.k;
    bar.B1til = aug.B1til;
    bar.C1til = aug.C1til;
    bar.D1til = aug.D1til;
    bar.Abar = aug.Atil;
    bar.B2ubar = aug.B2u;

    for (int i = 0; i < aug.g; ++i) {
        const auto& c = cong[static_cast<size_t>(i)];
        const Matrix T11i = inverse_2x2(c.T11());
        const Matrix cross = T11i * c.T12();                 // T11^-1 T12
        const Matrix schur = c.T22() - c.T21() * cross;      // T22 - T21 T11^-1 T12
        const Matrix& B2i = aug.B2til[static_cast<size_t>(i)];
        const Matrix& C2i = aug.C2til[static_cast<size_t>(i)];
        const Matrix& D2i = aug.D2til[static_cast<size_t>(i)];

        bar.Abar -= B2i * cross * C2i;
        bar.B2ubar -= B2i * cross * D2i;
        bar.B2bar.push_back(B2i * T11i);
        bar.C2bar.push_back(schur * C2i);
        bar.D2bar.push_back(schur * D2i);
        bar.D11bar.push_back(c.T21() * T11i);
    }
    return bar;
}

}  // namespace gcs
