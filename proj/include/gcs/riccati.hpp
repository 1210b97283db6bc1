#pragma once

#include <vector>

#include "gcs/augment.hpp"
#include "gcs/linalg.hpp"
#include "gcs/loopshift.hpp"
#include "gcs/types.hpp"

namespace gcs {

/// Multiplier-scaled synthesis data: row blocks ordered
/// [R^1/2; 0; sqrt(tau_j) C1til_j ...; C2check_i ...] and the matching
/// feedthrough stack, with B2tau = [B1til_j / sqrt(tau_j) ..., B2check_i ...].
struct TauSystem {
    Matrix Ctau;
    Matrix Dtau;
    Matrix Gtau;   // Dtau' Dtau, positive definite
    Matrix B2tau;  // (n+g) x (sum p_j + 2g)
};

TauSystem assemble(const CheckSystem& check, const MultiplierPoint& point,
                   const Matrix& R, const Matrix& G);

struct SynthDiagnostics {
    std::vector<int> pi_counts;
    std::vector<double> detU11s;
    std::vector<double> d11_margins;
    double are_residual = 0.0;
    ComplexVector closed_loop_spectrum;  // eigenvalues of Acheck + B2ucheck K
};

struct SynthesisResult {
    Matrix K;  // (m+2g) x (n+g)
    Matrix X;  // PSD Riccati solution
    double Vtau = 0.0;
    SynthDiagnostics diagnostics;
    MultiplierPoint point;
};

/// Solves the parameter-dependent game ARE and forms the state-feedback gain
/// K = -Gtau^-1 (B2ucheck' X + Dtau' Ctau). Vtau and the multiplier point are
/// filled in by the caller (cost_bound / evaluate_point).
SynthesisResult synthesize(const TauSystem& tausys, const CheckSystem& check);

/// V_tau = x0aug' X x0aug + sum_j tau_j x0aug' S1pad_j x0aug
///       + sum_i x0aug' Scomb_i x0aug, with x0aug = [x0; 0].
double cost_bound(const Matrix& X, const MultiplierPoint& point,
                  const std::vector<Matrix>& S1pad, const std::vector<Matrix>& Scomb,
                  const Vector& x0aug);

}  // namespace gcs
