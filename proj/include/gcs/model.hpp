#pragma once

#include <vector>

#include "gcs/errors.hpp"
#include "gcs/types.hpp"

namespace gcs {

/// One scalar nonlinearity channel mu = psi(nu) with generalized monotonicity
/// [dpsi dnu] N [dpsi; dnu] >= 0. psi is a polynomial given by ascending
/// coefficients (index = power); the constant term must be zero.
struct NonlinearChannel {
    Matrix B1bar;     // n x 1
    Matrix C1bar;     // 1 x n
    Matrix D1bar;     // 1 x m
    Matrix N;         // 2 x 2 symmetric
    Vector psi_poly;  // ascending coefficients, psi_poly[0] == 0
};

/// One uncertainty channel xi = phi(zeta) constrained by the IQC
/// int [xi' zeta'] M [xi; zeta] dt + x0' S x0 >= 0.
struct UncertaintyChannel {
    Matrix B1;  // n x p
    Matrix C1;  // q x n
    Matrix D1;  // q x m
    Matrix M;   // (p+q) x (p+q) symmetric
    Matrix S;   // n x n positive definite
};

struct PlantModel {
    Matrix A;   // n x n
    Matrix B2;  // n x m
    std::vector<NonlinearChannel> nonlinear_channels;
    std::vector<UncertaintyChannel> uncertainty_channels;
    Matrix R;   // (n+g) x (n+g) positive definite
    Matrix G;   // (m+2g) x (m+2g) positive definite
    Vector x0;  // n
};

/// A PlantModel whose dimension / symmetry / definiteness invariants have been
/// checked. Immutable; obtained only through validate().
class ValidatedPlant {
  public:
    const PlantModel& model() const { return model_; }
    int n() const { return n_; }
    int m() const { return m_; }
    int g() const { return g_; }
    int k() const { return k_; }

  private:
    friend ValidatedPlant validate(const PlantModel&);
    ValidatedPlant(PlantModel model, int n, int m, int g, int k)
        : model_(std::move(model)), n_(n), m_(m), g_(g), k_(k) {}
    PlantModel model_;
    int n_, m_, g_, k_;
};

ValidatedPlant validate(const PlantModel& model);

/// Horner evaluation of the channel polynomial.
double eval_psi(const NonlinearChannel& channel, double nu);

struct MonotonicityReport {
    struct Violation {
        double nu1;
        double nu2;
        double value;  // quadratic-form value below -1e-12
    };
    std::vector<Violation> violations;
    int samples = 0;
    bool consistent() const { return violations.empty(); }
};

/// Samples pairs (nu1, nu2) uniformly on [lo, hi] and reports every pair whose
/// quadratic form drops below -1e-12.
MonotonicityReport check_monotonicity(const NonlinearChannel& channel, int samples,
                                      double lo, double hi, unsigned seed = 0);

}  // namespace gcs
