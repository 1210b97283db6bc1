#include "gcs/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gcs/errors.hpp"
#include "gcs/sfactor.hpp"

namespace gcs {

const char* to_string(InfeasibleReason reason) {
    switch (reason) {
        case InfeasibleReason::AllZeroMultiplier: return "AllZeroMultiplier";
        case InfeasibleReason::WrongInertia: return "WrongInertia";
        case InfeasibleReason::SingularU11: return "SingularU11";
        case InfeasibleReason::D11TooLarge: return "D11TooLarge";
        case InfeasibleReason::GtauSingular: return "GtauSingular";
        case InfeasibleReason::NoStabilizingSolution: return "NoStabilizingSolution";
        case InfeasibleReason::XNotPSD: return "XNotPSD";
    }
    return "Unknown";
}

EvalOutcome evaluate_point(const ValidatedPlant& plant, const MultiplierPoint& point,
                           double epsilon_S) {
    if (static_cast<int>(point.tau.size()) != plant.k() ||
        static_cast<int>(point.lambda.size()) != plant.g()) {
        throw DimensionMismatch("evaluate_point: point",
                                std::to_string(plant.k()) + " tau / " +
                                    std::to_string(plant.g()) + " lambda",
                                std::to_string(point.tau.size()) + " tau / " +
                                    std::to_string(point.lambda.size()) + " lambda");
    }
    for (double t : point.tau) {
        if (!(t > 0.0)) {
            throw std::invalid_argument("evaluate_point: tau must be > 0");
        }
    }
    for (const auto& lam : point.lambda) {
        for (double l : lam) {
            if (l < 0.0) {
                throw std::invalid_argument("evaluate_point: lambda must be >= 0");
            }
        }
    }

    EvalOutcome out;
    const AugmentedPlant aug = build_augmented(plant, epsilon_S);

    std::vector<Congruence> congs;
    std::vector<Matrix> Scombs;
    std::vector<int> pi_counts;
    std::vector<double> detU11s;
    try {
        for (int i = 0; i < plant.g(); ++i) {
            const CombinedIqc comb = combine_multipliers(
                aug.iqc[static_cast<size_t>(i)], point.lambda[static_cast<size_t>(i)]);
            const FeasibilityCheck chk = check_conditions(comb.M);
            pi_counts.push_back(chk.pi_count);
            detU11s.push_back(chk.detU11);
            if (chk.pi_count != 2 || chk.n_zero != 0) {
                out.reason = InfeasibleReason::WrongInertia;
                return out;
            }
            if (std::abs(chk.detU11) <= 1e-9) {
                out.reason = InfeasibleReason::SingularU11;
                return out;
            }
            congs.push_back(build_congruence(comb.M));
            Scombs.push_back(comb.S);
        }

        const BarSystem bar = transform_system(aug, congs);
        const CheckSystem check = shift(bar);
        const TauSystem tausys =
            assemble(check, point, plant.model().R, plant.model().G);
        SynthesisResult result = synthesize(tausys, check);

        std::vector<Matrix> S1pad;
        const int n = plant.n(), g = plant.g();
        for (int j = 0; j < plant.k(); ++j) {
            Matrix S = Matrix::Zero(n + g, n + g);
            S.topLeftCorner(n, n) =
                plant.model().uncertainty_channels[static_cast<size_t>(j)].S;
            S1pad.push_back(std::move(S));
        }
        Vector x0aug = Vector::Zero(n + g);
        x0aug.head(n) = plant.model().x0;
        result.Vtau = cost_bound(result.X, point, S1pad, Scombs, x0aug);
        result.point = point;
        result.diagnostics.pi_counts = pi_counts;
        result.diagnostics.detU11s = detU11s;
        out.result = std::move(result);
        return out;
    } catch (const AllZeroMultiplier&) {
        out.reason = InfeasibleReason::AllZeroMultiplier;
    } catch (const SingularT11&) {
        out.reason = InfeasibleReason::SingularU11;
    } catch (const Infeasible&) {
        out.reason = InfeasibleReason::WrongInertia;
    } catch (const D11TooLarge&) {
        out.reason = InfeasibleReason::D11TooLarge;
    } catch (const GtauSingular&) {
        out.reason = InfeasibleReason::GtauSingular;
    } catch (const XNotPSD&) {
        out.reason = InfeasibleReason::XNotPSD;
    } catch (const NoStabilizingSolution&) {
        out.reason = InfeasibleReason::NoStabilizingSolution;
    }
    return out;
}

namespace {

struct GridShape {
    std::vector<std::size_t> sizes;  // tau channels first, then lambda channels
    std::size_t total = 1;
};

GridShape grid_shape(const SearchSpec& spec) {
    GridShape shape;
    for (const auto& taus : spec.tau_grid) {
        shape.sizes.push_back(taus.size());
        shape.total *= taus.size();
    }
    for (const auto& lams : spec.lambda_grid) {
        shape.sizes.push_back(lams.size());
        shape.total *= lams.size();
    }
    return shape;
}

MultiplierPoint grid_point(const SearchSpec& spec, const GridShape& shape,
                           std::size_t flat) {
    std::vector<std::size_t> idx(shape.sizes.size());
    for (std::size_t d = shape.sizes.size(); d-- > 0;) {
        idx[d] = flat % shape.sizes[d];
        flat /= shape.sizes[d];
    }
    MultiplierPoint point;
    std::size_t d = 0;
    for (const auto& taus : spec.tau_grid) point.tau.push_back(taus[idx[d++]]);
    for (const auto& lams : spec.lambda_grid) point.lambda.push_back(lams[idx[d++]]);
    return point;
}

constexpr double kTauFloor = 1e-8;

Vector encode(const MultiplierPoint& point) {
    Vector v(point.tau.size() + 3 * point.lambda.size());
    Eigen::Index at = 0;
    for (double t : point.tau) v(at++) = std::log(t);
    for (const auto& lam : point.lambda) {
        for (double l : lam) v(at++) = l;
    }
    return v;
}

MultiplierPoint decode(const Vector& v, std::size_t k, std::size_t g) {
    MultiplierPoint point;
    Eigen::Index at = 0;
    for (std::size_t j = 0; j < k; ++j) {
        const double lt = std::clamp(v(at++), std::log(kTauFloor), 50.0);
        point.tau.push_back(std::exp(lt));
    }
    for (std::size_t i = 0; i < g; ++i) {
        std::array<double, 3> lam{};
        for (int p = 0; p < 3; ++p) lam[static_cast<size_t>(p)] = std::max(v(at++), 0.0);
        point.lambda.push_back(lam);
    }
    return point;
}

}  // namespace

SearchReport search(const ValidatedPlant& plant, const SearchSpec& spec,
                    double epsilon_S) {
    if (static_cast<int>(spec.tau_grid.size()) != plant.k() ||
        static_cast<int>(spec.lambda_grid.size()) != plant.g()) {
        throw EmptySearchSpace("search: grid channel count does not match the plant");
    }
    for (const auto& taus : spec.tau_grid) {
        if (taus.empty()) throw EmptySearchSpace("search: empty tau grid");
    }
    for (const auto& lams : spec.lambda_grid) {
        if (lams.empty()) throw EmptySearchSpace("search: empty lambda grid");
    }

    SearchReport report;
    double best_v = std::numeric_limits<double>::infinity();

    auto consider = [&](const MultiplierPoint& point) -> double {
        EvalOutcome outcome = evaluate_point(plant, point, epsilon_S);
        ++report.evaluated;
        TraceEntry entry;
        entry.point = point;
        double value = std::numeric_limits<double>::infinity();
        if (outcome.feasible()) {
            ++report.feasible;
            value = outcome.result->Vtau;
            entry.Vtau = value;
            if (value < best_v) {
                best_v = value;
                report.best = std::move(outcome.result);
            }
        } else {
            entry.reason = outcome.reason;
            ++report.infeasible_reasons[*outcome.reason];
        }
        report.trace.push_back(std::move(entry));
        return value;
    };

    const GridShape shape = grid_shape(spec);
    std::optional<MultiplierPoint> best_grid_point;
    double best_grid_v = std::numeric_limits<double>::infinity();
    for (std::size_t flat = 0; flat < shape.total; ++flat) {
        const MultiplierPoint point = grid_point(spec, shape, flat);
        const double v = consider(point);
        if (v < best_grid_v) {
            best_grid_v = v;
            best_grid_point = point;
        }
    }

    if (spec.refine && best_grid_point.has_value() && spec.refine_iters > 0) {
        const std::size_t k = best_grid_point->tau.size();
        const std::size_t g = best_grid_point->lambda.size();
        const Eigen::Index dim = static_cast<Eigen::Index>(k + 3 * g);
        if (dim > 0) {
            auto objective = [&](const Vector& v) { return consider(decode(v, k, g)); };

            std::mt19937 rng(spec.seed);
            std::uniform_real_distribution<double> jitter(-1e-3, 1e-3);
            const Vector v0 = encode(*best_grid_point);
            std::vector<Vector> simplex;
            std::vector<double> value;
            simplex.push_back(v0);
            value.push_back(best_grid_v);
            for (Eigen::Index d = 0; d < dim; ++d) {
                Vector v = v0;
                double step = (d < static_cast<Eigen::Index>(k))
                                  ? 0.25
                                  : std::max(0.25 * std::abs(v(d)), 0.1);
                if (spec.seed != 0) step *= 1.0 + jitter(rng);
                v(d) += step;
                simplex.push_back(v);
                value.push_back(objective(v));
            }

            const double rho = 1.0, chi = 2.0, gamma = 0.5;
            const double sigma = spec.refine_shrink;
            for (int iter = 0; iter < spec.refine_iters; ++iter) {
                std::vector<std::size_t> order(simplex.size());
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
                std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return value[a] < value[b];
                });
                std::vector<Vector> s2;
                std::vector<double> f2;
                for (std::size_t i : order) {
                    s2.push_back(simplex[i]);
                    f2.push_back(value[i]);
                }
                simplex = std::move(s2);
                value = std::move(f2);
                const std::size_t worst = simplex.size() - 1;
                if (std::isfinite(value[0]) && std::isfinite(value[worst]) &&
                    value[worst] - value[0] < 1e-12 * (1.0 + std::abs(value[0]))) {
                    break;
                }
                Vector centroid = Vector::Zero(dim);
                for (std::size_t i = 0; i < worst; ++i) centroid += simplex[i];
                centroid /= static_cast<double>(worst);

                const Vector xr = centroid + rho * (centroid - simplex[worst]);
                const double fr = objective(xr);
                if (fr < value[0]) {
                    const Vector xe = centroid + chi * (xr - centroid);
                    const double fe = objective(xe);
                    if (fe < fr) {
                        simplex[worst] = xe;
                        value[worst] = fe;
                    } else {
                        simplex[worst] = xr;
                        value[worst] = fr;
                    }
                } else if (fr < value[worst - 1]) {
                    simplex[worst] = xr;
                    value[worst] = fr;
                } else {
                    const bool outside = fr < value[worst];
                    const Vector xc =
                        outside ? Vector(centroid + gamma * (xr - centroid))
                                : Vector(centroid - gamma * (centroid - simplex[worst]));
                    const double fc = objective(xc);
                    if (fc < std::min(fr, value[worst])) {
                        simplex[worst] = xc;
                        value[worst] = fc;
                    } else {
                        for (std::size_t i = 1; i < simplex.size(); ++i) {
                            simplex[i] = simplex[0] + sigma * (simplex[i] - simplex[0]);
                            value[i] = objective(simplex[i]);
                        }
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace gcs
