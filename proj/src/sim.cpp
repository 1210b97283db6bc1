#include "gcs/sim.hpp"

#include <cmath>
#include <string>

#include "gcs/errors.hpp"

namespace gcs {

namespace {

constexpr double kDivergenceBound = 1e12;

struct LoopContext {
    const PlantModel* mdl;
    int n, m, g, k;
    const Matrix* K;
    const UncertaintyRealization* realization;
    const std::vector<PsiFn>* psi_override;
    Eigen::Index xi_cols;

    double psi(int channel, double nu) const {
        if (psi_override != nullptr &&
            channel < static_cast<int>(psi_override->size()) &&
            (*psi_override)[static_cast<size_t>(channel)]) {
            return (*psi_override)[static_cast<size_t>(channel)](nu);
        }
        return eval_psi(mdl->nonlinear_channels[static_cast<size_t>(channel)], nu);
    }

    Vector xi(int channel, const Vector& zeta, double t) const {
        const auto& ch = mdl->uncertainty_channels[static_cast<size_t>(channel)];
        const Eigen::Index p = ch.B1.cols();
        switch (realization->kind) {
            case RealizationKind::Zero:
                return Vector::Zero(p);
            case RealizationKind::ScaledOutput:
                if (p != zeta.size()) {
                    throw DimensionMismatch(
                        "scaled realization: channel " + std::to_string(channel),
                        "p == q", std::to_string(p) + " vs " + std::to_string(zeta.size()));
                }
                return realization->delta * zeta;
            case RealizationKind::UserHook:
                return realization->hooks[static_cast<size_t>(channel)](zeta, t);
        }
        return Vector::Zero(p);
    }

    // z = [x; mu_tilde; J]
    Vector deriv(const Vector& z, double t) const {
        const Vector xt = z.head(n + g);
        const Vector x = xt.head(n);
        const Vector ut = (*K) * xt;
        const Vector u = ut.head(m);
        Vector dx = mdl->A * x + mdl->B2 * u;
        for (int j = 0; j < k; ++j) {
            const auto& ch = mdl->uncertainty_channels[static_cast<size_t>(j)];
            const Vector zeta = ch.C1 * x + ch.D1 * u;
            dx += ch.B1 * xi(j, zeta, t);
        }
        for (int i = 0; i < g; ++i) {
            const auto& ch = mdl->nonlinear_channels[static_cast<size_t>(i)];
            const double nu = (ch.C1bar * x + ch.D1bar * u)(0);
            dx += ch.B1bar.col(0) * psi(i, nu);
        }
        Vector dz(n + g + 1);
        dz.head(n) = dx;
        for (int i = 0; i < g; ++i) {
            dz(n + i) = psi(i, ut(m + i)) + ut(m + g + i);
        }
        dz(n + g) = xt.dot(mdl->R * xt) + ut.dot(mdl->G * ut);
        return dz;
    }
};

}  // namespace

Trajectory simulate(const ValidatedPlant& plant, const Matrix& K, const Vector& x0,
                    const UncertaintyRealization& realization, double dt,
                    double t_final, const std::vector<PsiFn>* psi_override) {
    const int n = plant.n(), m = plant.m(), g = plant.g(), k = plant.k();
    if (!(dt > 0.0) || t_final < dt) {
        throw std::invalid_argument("simulate: need dt > 0 and t_final >= dt");
    }
    if (K.rows() != m + 2 * g || K.cols() != n + g) {
        throw DimensionMismatch("simulate: K",
                                std::to_string(m + 2 * g) + "x" + std::to_string(n + g),
                                std::to_string(K.rows()) + "x" + std::to_string(K.cols()));
    }
    if (x0.size() != n) {
        throw DimensionMismatch("simulate: x0", std::to_string(n),
                                std::to_string(x0.size()));
    }
    if (realization.kind == RealizationKind::UserHook &&
        static_cast<int>(realization.hooks.size()) != k) {
        throw DimensionMismatch("simulate: realization.hooks", std::to_string(k),
                                std::to_string(realization.hooks.size()));
    }

    LoopContext ctx;
    ctx.mdl = &plant.model();
    ctx.n = n;
    ctx.m = m;
    ctx.g = g;
    ctx.k = k;
    ctx.K = &K;
    ctx.realization = &realization;
    ctx.psi_override = psi_override;
    ctx.xi_cols = 0;
    for (int j = 0; j < k; ++j) {
        ctx.xi_cols += plant.model().uncertainty_channels[static_cast<size_t>(j)].B1.cols();
    }

    const auto steps = static_cast<Eigen::Index>(std::llround(t_final / dt));
    Trajectory traj;
    traj.t.resize(steps + 1);
    traj.x.resize(steps + 1, n);
    traj.mu_tilde.resize(steps + 1, g);
    traj.u.resize(steps + 1, m);
    traj.nu.resize(steps + 1, g);
    traj.nu_tilde.resize(steps + 1, g);
    traj.zbar.resize(steps + 1, g);
    traj.xi1.resize(steps + 1, ctx.xi_cols);
    traj.running_cost.resize(steps + 1);

    Vector z = Vector::Zero(n + g + 1);
    z.head(n) = x0;

    auto record = [&](Eigen::Index row, double t) {
        const Vector xt = z.head(n + g);
        const Vector x = xt.head(n);
        const Vector ut = K * xt;
        const Vector u = ut.head(m);
        traj.t(row) = t;
        traj.x.row(row) = x.transpose();
        traj.mu_tilde.row(row) = xt.tail(g).transpose();
        traj.u.row(row) = u.transpose();
        for (int i = 0; i < g; ++i) {
            const auto& ch = plant.model().nonlinear_channels[static_cast<size_t>(i)];
            traj.nu(row, i) = (ch.C1bar * x + ch.D1bar * u)(0);
            traj.nu_tilde(row, i) = ut(m + i);
            traj.zbar(row, i) = ut(m + g + i);
        }
        Eigen::Index at = 0;
        for (int j = 0; j < k; ++j) {
            const auto& ch = plant.model().uncertainty_channels[static_cast<size_t>(j)];
            const Vector zeta = ch.C1 * x + ch.D1 * u;
            const Vector xi = ctx.xi(j, zeta, t);
            traj.xi1.row(row).segment(at, xi.size()) = xi.transpose();
            at += xi.size();
        }
        traj.running_cost(row) = z(n + g);
    };

    record(0, 0.0);
    Eigen::Index completed = 0;
    for (Eigen::Index s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * dt;
        const Vector k1 = ctx.deriv(z, t);
        const Vector k2 = ctx.deriv(z + 0.5 * dt * k1, t + 0.5 * dt);
        const Vector k3 = ctx.deriv(z + 0.5 * dt * k2, t + 0.5 * dt);
        const Vector k4 = ctx.deriv(z + dt * k3, t + dt);
        z += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!z.allFinite() || z.head(n + g).cwiseAbs().maxCoeff() > kDivergenceBound) {
            traj.diverged = true;
            break;
        }
        record(s + 1, static_cast<double>(s + 1) * dt);
        completed = s + 1;
    }
    if (traj.diverged) {
        const Eigen::Index rows = completed + 1;
        traj.t.conservativeResize(rows);
        traj.x.conservativeResize(rows, Eigen::NoChange);
        traj.mu_tilde.conservativeResize(rows, Eigen::NoChange);
        traj.u.conservativeResize(rows, Eigen::NoChange);
        traj.nu.conservativeResize(rows, Eigen::NoChange);
        traj.nu_tilde.conservativeResize(rows, Eigen::NoChange);
        traj.zbar.conservativeResize(rows, Eigen::NoChange);
        traj.xi1.conservativeResize(rows, Eigen::NoChange);
        traj.running_cost.conservativeResize(rows);
    }
    return traj;
}

double realized_cost(const Trajectory& traj, const Matrix& R, const Matrix& G) {
    const Eigen::Index rows = traj.t.size();
    const Eigen::Index n = traj.x.cols(), g = traj.mu_tilde.cols(), m = traj.u.cols();
    if (R.rows() != n + g || R.cols() != n + g) {
        throw DimensionMismatch("realized_cost: R",
                                std::to_string(n + g) + "x" + std::to_string(n + g),
                                std::to_string(R.rows()) + "x" + std::to_string(R.cols()));
    }
    if (G.rows() != m + 2 * g || G.cols() != m + 2 * g) {
        throw DimensionMismatch("realized_cost: G",
                                std::to_string(m + 2 * g) + "x" + std::to_string(m + 2 * g),
                                std::to_string(G.rows()) + "x" + std::to_string(G.cols()));
    }
    auto integrand = [&](Eigen::Index row) {
        Vector xt(n + g);
        xt.head(n) = traj.x.row(row).transpose();
        xt.tail(g) = traj.mu_tilde.row(row).transpose();
        Vector ut(m + 2 * g);
        ut.head(m) = traj.u.row(row).transpose();
        ut.segment(m, g) = traj.nu_tilde.row(row).transpose();
        ut.tail(g) = traj.zbar.row(row).transpose();
        return xt.dot(R * xt) + ut.dot(G * ut);
    };
    double acc = 0.0;
    double prev = integrand(0);
    for (Eigen::Index row = 1; row < rows; ++row) {
        const double cur = integrand(row);
        acc += 0.5 * (traj.t(row) - traj.t(row - 1)) * (prev + cur);
        prev = cur;
    }
    return acc;
}

TrajectoryIqcReport check_trajectory_iqcs(const Trajectory& traj,
                                          const ValidatedPlant& plant,
                                          double epsilon_S,
                                          const std::vector<PsiFn>* psi_override) {
    const PlantModel& mdl = plant.model();
    const int g = plant.g(), k = plant.k();
    const Eigen::Index rows = traj.t.size();
    const Vector x0 = mdl.x0;

    auto psi = [&](int channel, double nu) {
        if (psi_override != nullptr && channel < static_cast<int>(psi_override->size()) &&
            (*psi_override)[static_cast<size_t>(channel)]) {
            return (*psi_override)[static_cast<size_t>(channel)](nu);
        }
        return eval_psi(mdl.nonlinear_channels[static_cast<size_t>(channel)], nu);
    };

    TrajectoryIqcReport report;

    // Pairwise monotonicity samples (strided, deterministic).
    for (int i = 0; i < g; ++i) {
        const Matrix& N = mdl.nonlinear_channels[static_cast<size_t>(i)].N;
        double worst = 0.0;
        const Eigen::Index stride = std::max<Eigen::Index>(1, rows / 64);
        for (Eigen::Index a = 0; a < rows; a += stride) {
            for (Eigen::Index b = a + stride; b < rows; b += stride) {
                const double dnu = traj.nu(a, i) - traj.nu(b, i);
                const double dpsi = psi(i, traj.nu(a, i)) - psi(i, traj.nu(b, i));
                const double value = N(0, 0) * dpsi * dpsi + 2.0 * N(0, 1) * dpsi * dnu +
                                     N(1, 1) * dnu * dnu;
                worst = std::min(worst, value);
            }
        }
        report.monotonicity_margin.push_back(worst);
    }

    // Uncertainty IQCs: running trapezoid of [xi' zeta'] M [xi; zeta] plus the
    // initial-state term, minimum over horizon endpoints.
    Eigen::Index xi_at = 0;
    for (int j = 0; j < k; ++j) {
        const auto& ch = mdl.uncertainty_channels[static_cast<size_t>(j)];
        const Eigen::Index p = ch.B1.cols();
        const double head = x0.dot(ch.S * x0);
        double acc = head;
        double worst = acc;
        double prev = 0.0;
        for (Eigen::Index row = 0; row < rows; ++row) {
            const Vector x = traj.x.row(row).transpose();
            const Vector u = traj.u.row(row).transpose();
            const Vector zeta = ch.C1 * x + ch.D1 * u;
            Vector sig(p + zeta.size());
            sig.head(p) = traj.xi1.row(row).segment(xi_at, p).transpose();
            sig.tail(zeta.size()) = zeta;
            const double cur = sig.dot(ch.M * sig);
            if (row > 0) {
                acc += 0.5 * (traj.t(row) - traj.t(row - 1)) * (prev + cur);
                worst = std::min(worst, acc);
            }
            prev = cur;
        }
        report.uncertainty_margin.push_back(worst);
        xi_at += p;
    }

    // Copy IQCs on (mu, mu_bar, nu, nu_tilde) for the three lifted forms.
    for (int i = 0; i < g; ++i) {
        const Matrix& N = mdl.nonlinear_channels[static_cast<size_t>(i)].N;
        const double head = epsilon_S * x0.squaredNorm();
        std::array<double, 3> worst{};
        std::array<double, 3> acc{head, head, head};
        worst = acc;
        std::array<double, 3> prev{};
        for (Eigen::Index row = 0; row < rows; ++row) {
            const double nu = traj.nu(row, i);
            const double nut = traj.nu_tilde(row, i);
            const double mu = psi(i, nu);
            const double mub = psi(i, nut);
            const std::array<std::array<double, 2>, 3> pair = {{
                {mu - mub, nu - nut},  // difference form
                {mu, nu},              // plant form
                {mub, nut},            // copy form
            }};
            for (int pform = 0; pform < 3; ++pform) {
                const double a = pair[static_cast<size_t>(pform)][0];
                const double b = pair[static_cast<size_t>(pform)][1];
                const double cur =
                    N(0, 0) * a * a + 2.0 * N(0, 1) * a * b + N(1, 1) * b * b;
                auto& ap = acc[static_cast<size_t>(pform)];
                if (row > 0) {
                    ap += 0.5 * (traj.t(row) - traj.t(row - 1)) *
                          (prev[static_cast<size_t>(pform)] + cur);
                    worst[static_cast<size_t>(pform)] =
                        std::min(worst[static_cast<size_t>(pform)], ap);
                }
                prev[static_cast<size_t>(pform)] = cur;
            }
        }
        report.copy_margin.push_back(worst);
    }
    return report;
}

}  // namespace gcs
