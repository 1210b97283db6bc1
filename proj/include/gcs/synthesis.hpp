#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcs/model.hpp"
#include "gcs/riccati.hpp"

namespace gcs {

enum class InfeasibleReason {
    AllZeroMultiplier,
    WrongInertia,
    SingularU11,
    D11TooLarge,
    GtauSingular,
    NoStabilizingSolution,
    XNotPSD,
};

const char* to_string(InfeasibleReason reason);

/// Either a complete synthesis result or a typed reason; infeasibility is a
/// value, not an error.
struct EvalOutcome {
    std::optional<SynthesisResult> result;
    std::optional<InfeasibleReason> reason;
    bool feasible() const { return result.has_value(); }
};

/// Runs the full pipeline: augment -> combine -> inertia check -> congruence
/// -> transform -> D11 check -> shift -> assemble -> synthesize -> bound.
EvalOutcome evaluate_point(const ValidatedPlant& plant, const MultiplierPoint& point,
                           double epsilon_S = 1e-6);

struct SearchSpec {
    std::vector<std::vector<double>> tau_grid;  // per uncertainty channel
    std::vector<std::vector<std::array<double, 3>>> lambda_grid;  // per nonlinearity channel
    bool refine = false;
    int refine_iters = 120;
    double refine_shrink = 0.5;
    unsigned seed = 0;  // nonzero jitters the refinement simplex
};

struct TraceEntry {
    MultiplierPoint point;
    std::optional<double> Vtau;
    std::optional<InfeasibleReason> reason;
};

struct SearchReport {
    std::optional<SynthesisResult> best;
    std::size_t evaluated = 0;
    std::size_t feasible = 0;
    std::map<InfeasibleReason, int> infeasible_reasons;
    std::vector<TraceEntry> trace;  // grid order, then refinement evaluations
};

/// Grid scan over the Cartesian product (tau channels vary slowest, then each
/// lambda channel) with optional Nelder-Mead refinement on (log tau, lambda)
/// from the best grid point, projected back to the admissible orthant.
SearchReport search(const ValidatedPlant& plant, const SearchSpec& spec,
                    double epsilon_S = 1e-6);

}  // namespace gcs
