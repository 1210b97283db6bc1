#include "gcs/loopshift.hpp"

#include "gcs/errors.hpp"
#include "gcs/linalg.hpp"

namespace gcs {

std::vector<D11Check> check_d11(const BarSystem& bar) {
    std::vector<D11Check> out;
    out.reserve(bar.D11bar.size());
    for (const Matrix& D : bar.D11bar) {
        const Matrix Phi = Matrix::Identity(2, 2) - D.transpose() * D;
        const double margin = sym_eig(Phi).values(0);
        out.push_back({margin > 1e-9, margin});
    }
    return out;
}

CheckSystem shift(const BarSystem& bar) {
    const std::vector<D11Check> checks = check_d11(bar);
    CheckSystem sys;
    sys.n = bar.n;
    sys.m = bar.m;
    sys.g = bar.g;
    sys.k = bar.k;
    sys.B1til = bar.B1til;
    sys.C1til = bar.C1til;
    sys.D1til = bar.D1til;
    sys.Acheck = bar.Abar;
    sys.B2ucheck = bar.B2ubar;

    for (int i = 0; i < bar.g; ++i) {
        if (!checks[static_cast<size_t>(i)].ok) {
            throw D11TooLarge(i, checks[static_cast<size_t>(i)].margin);
        }
        const Matrix& D11 = bar.D11bar[static_cast<size_t>(i)];
        const Matrix Phi = Matrix::Identity(2, 2) - D11.transpose() * D11;
        const Matrix Phibar = Matrix::Identity(2, 2) - D11 * D11.transpose();
        // Phi^-1 D11' = D11' Phibar^-1; the shifted terms use the Phibar form.
        const Matrix lift = D11.transpose() * Phibar.inverse();
        const Matrix& B2i = bar.B2bar[static_cast<size_t>(i)];
        const Matrix& C2i = bar.C2bar[static_cast<size_t>(i)];
        const Matrix& D2i = bar.D2bar[static_cast<size_t>(i)];

        sys.Acheck += B2i * lift * C2i;
        sys.B2ucheck += B2i * lift * D2i;
        const Matrix phi_hi = inv_sqrt_pd(Phi);
        const Matrix phibar_hi = inv_sqrt_pd(Phibar);
        sys.B2check.push_back(B2i * phi_hi);
        sys.C2check.push_back(phibar_hi * C2i);
        sys.D2check.push_back(phibar_hi * D2i);
        sys.Phi_half_inv.push_back(phi_hi);
        sys.Phibar_half_inv.push_back(phibar_hi);
        sys.d11_margin.push_back(checks[static_cast<size_t>(i)].margin);
    }
    return sys;
}

}  // namespace gcs
