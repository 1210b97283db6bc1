#include "gcs/model.hpp"

#include <random>
#include <string>

#include "gcs/linalg.hpp"

namespace gcs {

namespace {

std::string dims(const Matrix& M) {
    return std::to_string(M.rows()) + "x" + std::to_string(M.cols());
}

void require_shape(const Matrix& M, Eigen::Index rows, Eigen::Index cols,
                   const std::string& field) {
    if (M.rows() != rows || M.cols() != cols) {
        throw DimensionMismatch(field, std::to_string(rows) + "x" + std::to_string(cols),
                                dims(M));
    }
}

void require_symmetric(const Matrix& M, const std::string& field) {
    if ((M - M.transpose()).norm() > 1e-9 * (1.0 + M.norm())) {
        throw NotSymmetric(field);
    }
}

void require_pd(const Matrix& M, const std::string& field) {
    require_symmetric(M, field);
    if (!is_pos_def(M, 0.0)) {
        throw NotPositiveDefinite(field);
    }
}

}  // namespace

ValidatedPlant validate(const PlantModel& model) {
    if (model.A.rows() != model.A.cols()) {
        throw DimensionMismatch("plant.A", "square", dims(model.A));
    }
    const int n = static_cast<int>(model.A.rows());
    if (model.B2.rows() != n || model.B2.cols() < 1) {
        throw DimensionMismatch("plant.B2", std::to_string(n) + "x m (m >= 1)",
                                dims(model.B2));
    }
    const int m = static_cast<int>(model.B2.cols());
    const int g = static_cast<int>(model.nonlinear_channels.size());
    const int k = static_cast<int>(model.uncertainty_channels.size());

    for (int i = 0; i < g; ++i) {
        const auto& ch = model.nonlinear_channels[static_cast<size_t>(i)];
        const std::string base = "nonlinear_channels[" + std::to_string(i) + "].";
        require_shape(ch.B1bar, n, 1, base + "B1bar");
        require_shape(ch.C1bar, 1, n, base + "C1bar");
        require_shape(ch.D1bar, 1, m, base + "D1bar");
        require_shape(ch.N, 2, 2, base + "N");
        require_symmetric(ch.N, base + "N");
        if (ch.psi_poly.size() > 0 && ch.psi_poly(0) != 0.0) {
            throw ConstantTermInPsi(base + "psi_poly has a nonzero constant term");
        }
    }
    for (int j = 0; j < k; ++j) {
        const auto& ch = model.uncertainty_channels[static_cast<size_t>(j)];
        const std::string base = "uncertainty_channels[" + std::to_string(j) + "].";
        if (ch.B1.rows() != n || ch.B1.cols() < 1) {
            throw DimensionMismatch(base + "B1", std::to_string(n) + "x p (p >= 1)",
                                    dims(ch.B1));
        }
        const Eigen::Index p = ch.B1.cols();
        if (ch.C1.cols() != n || ch.C1.rows() < 1) {
            throw DimensionMismatch(base + "C1", "q x " + std::to_string(n), dims(ch.C1));
        }
        const Eigen::Index q = ch.C1.rows();
        require_shape(ch.D1, q, m, base + "D1");
        require_shape(ch.M, p + q, p + q, base + "M");
        require_symmetric(ch.M, base + "M");
        require_shape(ch.S, n, n, base + "S");
        require_pd(ch.S, base + "S");
    }
    require_shape(model.R, n + g, n + g, "cost.R");
    require_pd(model.R, "cost.R");
    require_shape(model.G, m + 2 * g, m + 2 * g, "cost.G");
    require_pd(model.G, "cost.G");
    if (model.x0.size() != n) {
        throw DimensionMismatch("x0", std::to_string(n), std::to_string(model.x0.size()));
    }
    return ValidatedPlant(model, n, m, g, k);
}

double eval_psi(const NonlinearChannel& channel, double nu) {
    double acc = 0.0;
    for (Eigen::Index i = channel.psi_poly.size() - 1; i >= 0; --i) {
        acc = acc * nu + channel.psi_poly(i);
    }
    return acc;
}

MonotonicityReport check_monotonicity(const NonlinearChannel& channel, int samples,
                                      double lo, double hi, unsigned seed) {
    if (samples < 1) {
        throw std::invalid_argument("check_monotonicity: samples must be >= 1");
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    MonotonicityReport report;
    report.samples = samples;
    for (int s = 0; s < samples; ++s) {
        const double nu1 = dist(rng);
        const double nu2 = dist(rng);
        const double dpsi = eval_psi(channel, nu1) - eval_psi(channel, nu2);
        const double dnu = nu1 - nu2;
        const double value = channel.N(0, 0) * dpsi * dpsi +
                             2.0 * channel.N(0, 1) * dpsi * dnu +
                             channel.N(1, 1) * dnu * dnu;
        if (value < -1e-12) {
            report.violations.push_back({nu1, nu2, value});
        }
    }
    return report;
}

}  // namespace gcs
