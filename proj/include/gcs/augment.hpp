#pragma once

#include <array>
#include <vector>

#include "gcs/model.hpp"
#include "gcs/types.hpp"

namespace gcs {

/// Three lifted IQC matrices for one nonlinearity channel, on coordinates
/// (mu, mu_bar, nu, nu_tilde): difference form, plant form, copy form.
struct LiftedIqc {
    std::array<Matrix, 3> M;  // each 4 x 4 symmetric
    std::array<Matrix, 3> S;  // each (n+g) x (n+g) positive definite
};

/// The plant of the augmented state [x; mu_tilde] with stacked input
/// u_tilde = [u; nu_tilde; z_bar]; the controller copy states are driven
/// through the identity block of B2u.
struct AugmentedPlant {
    Matrix Atil;                // (n+g) x (n+g), blockdiag(A, 0)
    Matrix B2u;                 // (n+g) x (m+2g)
    std::vector<Matrix> B1til;  // per uncertainty channel, (n+g) x p_j
    std::vector<Matrix> C1til;  // q_j x (n+g)
    std::vector<Matrix> D1til;  // q_j x (m+2g)
    std::vector<Matrix> B2til;  // per nonlinearity channel, (n+g) x 2
    std::vector<Matrix> C2til;  // 2 x (n+g)
    std::vector<Matrix> D2til;  // 2 x (m+2g)
    std::vector<LiftedIqc> iqc;  // per nonlinearity channel
    int n = 0, m = 0, g = 0, k = 0;
};

struct MultiplierPoint {
    std::vector<double> tau;                    // per uncertainty channel, > 0
    std::vector<std::array<double, 3>> lambda;  // per nonlinearity channel, >= 0
};

/// Builds the augmented system and the lifted IQCs. The base matrix for the
/// lifted S terms defaults to epsilon_S * I so the cost bound is not inflated
/// by arbitrary choices.
AugmentedPlant build_augmented(const ValidatedPlant& plant, double epsilon_S = 1e-6);

LiftedIqc lift_iqcs(const Matrix& N, const Matrix& Sbase);

struct CombinedIqc {
    Matrix M;  // 4 x 4 symmetric
    Matrix S;  // (n+g) x (n+g)
};

/// M(lambda) = sum_p lambda_p M_p, S(lambda) = sum_p lambda_p S_p.
CombinedIqc combine_multipliers(const LiftedIqc& lifted,
                                const std::array<double, 3>& lambda);

}  // namespace gcs
