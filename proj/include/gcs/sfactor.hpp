#pragma once

#include <vector>

#include "gcs/augment.hpp"
#include "gcs/types.hpp"

namespace gcs {

struct FeasibilityCheck {
    int pi_count = 0;     // number of eigenvalues below -1e-9
    int n_zero = 0;       // eigenvalues within +/-1e-9
    double detU11 = 0.0;  // det of the top 2x2 block of the negative-pair eigenvectors
    bool feasible = false;
};

/// Multiplier feasibility: exactly two negative eigenvalues, none at zero,
/// and |det U11| > 1e-9.
FeasibilityCheck check_conditions(const Matrix& Mcomb);

/// Congruence T with T' M T = diag(-1,-1,1,1). The T11/T12/T21/T22 blocks are
/// the blocks of T^-1, which is what the change of variables
/// [xi_bar; zeta_bar] = T^-1 [xi_til; zeta_til] uses.
struct Congruence {
    Matrix T;     // 4 x 4
    Matrix Tinv;  // 4 x 4
    int pi_count = 0;
    double detU11 = 0.0;

    Matrix T11() const { return Tinv.topLeftCorner(2, 2); }
    Matrix T12() const { return Tinv.topRightCorner(2, 2); }
    Matrix T21() const { return Tinv.bottomLeftCorner(2, 2); }
    Matrix T22() const { return Tinv.bottomRightCorner(2, 2); }
};

/// T = U_ord diag(|sigma|^-1/2) with eigenvalues ascending (negative pair
/// first). Throws Infeasible when check_conditions rejects Mcomb.
Congruence build_congruence(const Matrix& Mcomb);

/// The system after the per-channel change of uncertainty coordinates.
struct BarSystem {
    Matrix Abar;
    Matrix B2ubar;
    std::vector<Matrix> B1til, C1til, D1til;  // unchanged uncertainty data
    std::vector<Matrix> B2bar;    // (n+g) x 2 per channel
    std::vector<Matrix> C2bar;    // 2 x (n+g)
    std::vector<Matrix> D2bar;    // 2 x (m+2g)
    std::vector<Matrix> D11bar;   // 2 x 2 per channel
    int n = 0, m = 0, g = 0, k = 0;
};

BarSystem transform_system(const AugmentedPlant& aug,
                           const std::vector<Congruence>& cong);

}  // namespace gcs
