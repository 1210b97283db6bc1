#pragma once

#include <functional>
#include <vector>

#include "gcs/model.hpp"
#include "gcs/types.hpp"

namespace gcs {

enum class RealizationKind { Zero, ScaledOutput, UserHook };

/// How the uncertainty inputs xi_1j are generated along the closed loop.
/// ScaledOutput is xi = delta * zeta and satisfies the unit-gain IQC pathwise
/// for |delta| <= 1 (requires p_j == q_j).
struct UncertaintyRealization {
    RealizationKind kind = RealizationKind::Zero;
    double delta = 0.0;
    std::vector<std::function<Vector(const Vector&, double)>> hooks;  // per channel

    static UncertaintyRealization zero() { return {}; }
    static UncertaintyRealization scaled(double delta) {
        return {RealizationKind::ScaledOutput, delta, {}};
    }
};

/// Time-sampled closed-loop signals on a uniform grid; running_cost is the
/// RK4-integrated cost functional.
struct Trajectory {
    Vector t;
    Matrix x;         // rows = samples, cols = n
    Matrix mu_tilde;  // controller copy states
    Matrix u;
    Matrix nu;
    Matrix nu_tilde;
    Matrix zbar;
    Matrix xi1;       // stacked uncertainty inputs (sum p_j columns)
    Vector running_cost;
    bool diverged = false;
};

using PsiFn = std::function<double(double)>;

/// Closed nonlinear loop: plant with mu_i = psi_i(nu_i), controller
/// u_tilde = K [x; mu_tilde] with copy dynamics d(mu_tilde_i)/dt =
/// psi_i(nu_tilde_i) + zbar_i, integrated by classical fixed-step RK4.
/// mu_tilde(0) = 0. Divergence (any |state| > 1e12 or non-finite) aborts with
/// the partial trajectory flagged. psi_override, when given, replaces the
/// polynomial channel functions (one entry per channel; empty entries keep
/// the polynomial).
Trajectory simulate(const ValidatedPlant& plant, const Matrix& K, const Vector& x0,
                    const UncertaintyRealization& realization, double dt,
                    double t_final, const std::vector<PsiFn>* psi_override = nullptr);

/// Cost functional recomputed from the stored series (trapezoid on the grid,
/// with u_tilde reassembled as [u; nu_tilde; zbar]). Agrees with the final
/// running_cost up to discretization error.
double realized_cost(const Trajectory& traj, const Matrix& R, const Matrix& G);

/// Worst margins of the defining integral constraints along the trajectory:
/// per nonlinearity channel the sampled pairwise monotonicity form, and per
/// IQC the most negative accumulated left-hand side over horizon endpoints.
struct TrajectoryIqcReport {
    std::vector<double> monotonicity_margin;            // per nonlinearity channel
    std::vector<double> uncertainty_margin;             // per uncertainty channel
    std::vector<std::array<double, 3>> copy_margin;     // per channel, three lifted IQCs
};

TrajectoryIqcReport check_trajectory_iqcs(const Trajectory& traj,
                                          const ValidatedPlant& plant,
                                          double epsilon_S = 1e-6,
                                          const std::vector<PsiFn>* psi_override = nullptr);

}  // namespace gcs
