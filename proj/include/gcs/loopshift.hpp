#pragma once

#include <vector>

#include "gcs/sfactor.hpp"
#include "gcs/types.hpp"

namespace gcs {

struct D11Check {
    bool ok = false;
    double margin = 0.0;  // smallest eigenvalue of I - D11' D11
};

/// Per-channel loop-shift admissibility: I - D11' D11 positive definite with
/// margin 1e-9.
std::vector<D11Check> check_d11(const BarSystem& bar);

/// The synthesis-ready system after eliminating the D11 feedthrough.
struct CheckSystem {
    Matrix Acheck;
    Matrix B2ucheck;
    std::vector<Matrix> B1til, C1til, D1til;
    std::vector<Matrix> B2check;       // (n+g) x 2 per channel
    std::vector<Matrix> C2check;       // 2 x (n+g)
    std::vector<Matrix> D2check;       // 2 x (m+2g)
    std::vector<Matrix> Phi_half_inv;     // Phi^-1/2 per channel
    std::vector<Matrix> Phibar_half_inv;  // Phi_bar^-1/2 per channel
    std::vector<double> d11_margin;
    int n = 0, m = 0, g = 0, k = 0;
};

/// Throws D11TooLarge(channel) when any channel fails check_d11.
CheckSystem shift(const BarSystem& bar);

}  // namespace gcs
