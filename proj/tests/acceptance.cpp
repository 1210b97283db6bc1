// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits with the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gcs/augment.hpp"
#include "gcs/cli.hpp"
#include "gcs/config.hpp"
#include "gcs/linalg.hpp"
#include "gcs/loopshift.hpp"
#include "gcs/riccati.hpp"
#include "gcs/sfactor.hpp"
#include "gcs/sim.hpp"
#include "gcs/synthesis.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gcs;

namespace {

const std::string kConfigDir = GCS_CONFIG_DIR;
const std::string kCliPath = GCS_CLI_PATH;

int failures = 0;

void report(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str());
    if (!ok) ++failures;
}

void info(const std::string& what) { std::printf("       %s\n", what.c_str()); }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
}

struct SurgeRun {
    std::optional<SearchReport> report;
    std::optional<EvalOutcome> paper_point;
};

SurgeRun run_surge() {
    SurgeRun run;
    const ToolConfig cfg = load_config(kConfigDir + "/surge.json");
    const ValidatedPlant plant = validate(cfg.plant);
    run.paper_point = evaluate_point(
        plant, MultiplierPoint{{0.15}, {{{1.0, 0.1, 0.12}}}}, cfg.epsilon_S);
    run.report = search(plant, *cfg.search, cfg.epsilon_S);
    return run;
}

// 1. Paper-point feasibility on the compressor config.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const ToolConfig cfg = load_config(kConfigDir + "/surge.json");
    const ValidatedPlant plant = validate(cfg.plant);
    const AugmentedPlant aug = build_augmented(plant, cfg.epsilon_S);
    const CombinedIqc comb = combine_multipliers(aug.iqc[0], {1.0, 0.1, 0.12});
    const FeasibilityCheck chk = check_conditions(comb.M);
    bool ok = chk.pi_count == 2 && std::abs(chk.detU11) > 1e-9;
    std::string detail = "Pi = " + std::to_string(chk.pi_count) +
                         ", |det U11| = " + format_double(std::abs(chk.detU11));
    double margin = std::nan("");
    if (chk.feasible) {
        const BarSystem bar = transform_system(aug, {build_congruence(comb.M)});
        margin = check_d11(bar)[0].margin;
        detail += ", D11 margin = " + format_double(margin);
        ok = ok && margin > 1e-9;
        if (margin > 1e-9) {
            const EvalOutcome outcome = evaluate_point(
                plant, MultiplierPoint{{0.15}, {{{1.0, 0.1, 0.12}}}}, cfg.epsilon_S);
            ok = ok && outcome.feasible() &&
                 outcome.result->diagnostics.are_residual <=
                     1e-8 * (1.0 + outcome.result->X.norm());
        } else {
            ok = false;
        }
    } else {
        ok = false;
    }
    const double dt = seconds_since(start);
    ok = ok && dt < 1.0;
    report(1, ok,
           "paper-point feasibility at tau=0.15, lambda=(1,0.1,0.12): " + detail +
               " (" + format_double(dt) + " s)");
    if (!ok) {
        info("the monotone N gives M(lambda) a zero upper-left block, so every");
        info("contract-satisfying congruence yields D11'D11 = I exactly; the");
        info("margin clause cannot hold (see the project notes for the analysis)");
    }
}

// 2. Cost-bound certification over five uncertainty realizations.
void criterion_2(const SurgeRun& surge) {
    const auto start = std::chrono::steady_clock::now();
    if (!surge.report->best.has_value()) {
        report(2, false,
               "cost-bound certification: no feasible multiplier point exists for "
               "the compressor config (blocked by criterion 1)");
        return;
    }
    const ToolConfig cfg = load_config(kConfigDir + "/surge.json");
    const ValidatedPlant plant = validate(cfg.plant);
    const SynthesisResult& best = *surge.report->best;
    bool ok = true;
    for (double delta : {0.0, -1.0, -0.5, 0.5, 1.0}) {
        const UncertaintyRealization realization =
            delta == 0.0 ? UncertaintyRealization::zero()
                         : UncertaintyRealization::scaled(delta);
        const Trajectory traj =
            simulate(plant, best.K, plant.model().x0, realization, 1e-3, 20.0);
        ok = ok && !traj.diverged &&
             traj.running_cost(traj.running_cost.size() - 1) <= best.Vtau;
    }
    const double dt = seconds_since(start);
    ok = ok && dt < 10.0;
    report(2, ok, "cost-bound certification J <= V_tau over five realizations (" +
                      format_double(dt) + " s)");
}

// 3. Paper number as a logged regression target.
void criterion_3(const SurgeRun& surge) {
    if (surge.report->best.has_value()) {
        info("V_tau under defaults = " + format_double(surge.report->best->Vtau) +
             " (paper reports 0.5772)");
        report(3, true, "V_tau logged under defaults (R=I, G=I, eps_S=1e-6)");
        return;
    }
    info("deterministic outcome pinned instead: evaluated " +
         std::to_string(surge.report->evaluated) + ", feasible 0, reasons:");
    for (const auto& [reason, count] : surge.report->infeasible_reasons) {
        info("  " + std::string(to_string(reason)) + ": " + std::to_string(count));
    }
    report(3, false,
           "no V_tau exists to log under defaults; the compressor search space "
           "is uniformly D11-infeasible under the sound congruence");
}

// 4. Qualitative closed-loop behavior from the paper's figure.
void criterion_4(const SurgeRun& surge) {
    if (!surge.report->best.has_value()) {
        report(4, false,
               "qualitative closed-loop reproduction: blocked, no synthesized "
               "controller for the compressor config");
        return;
    }
    const ToolConfig cfg = load_config(kConfigDir + "/surge.json");
    const ValidatedPlant plant = validate(cfg.plant);
    const Trajectory traj = simulate(plant, surge.report->best->K, plant.model().x0,
                                     UncertaintyRealization::zero(), 1e-3, 20.0);
    const Eigen::Index last = traj.t.size() - 1;
    const double final_norm = std::sqrt(traj.x.row(last).squaredNorm() +
                                        traj.mu_tilde.row(last).squaredNorm());
    double excursion = 0.0;
    for (Eigen::Index i = 0; i <= last; ++i) {
        excursion = std::max(excursion, traj.x.row(i).cwiseAbs().maxCoeff());
        excursion = std::max(excursion, traj.mu_tilde.row(i).cwiseAbs().maxCoeff());
    }
    const bool ok = !traj.diverged && final_norm <= 1e-2 && excursion <= 10.0;
    report(4, ok, "closed-loop decay |x(20)| <= 1e-2 with excursions below 10");
}

// 5. Congruence property suite on random feasible multipliers.
void criterion_5() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(1005);
    const Matrix J = (Matrix(4, 4) << -1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1)
                         .finished();
    double worst_contract = 0.0;
    double worst_sign = 0.0;
    int kept = 0;
    while (kept < 1000) {
        const Matrix M = test::random_feasible_multiplier(rng);
        if (!check_conditions(M).feasible) continue;
        ++kept;
        const Congruence cong = build_congruence(M);
        worst_contract =
            std::max(worst_contract, (cong.T.transpose() * M * cong.T - J).norm());
        const Vector bar = test::random_matrix(rng, 4, 1);
        const Vector til = cong.T * bar;
        const double got = til.dot(M * til);
        const double want = bar.tail(2).squaredNorm() - bar.head(2).squaredNorm();
        worst_sign = std::max(worst_sign, std::abs(got - want));
    }
    const double dt = seconds_since(start);
    const bool ok = worst_contract <= 1e-8 && worst_sign <= 1e-9 && dt < 5.0;
    report(5, ok,
           "congruence contract (worst " + format_double(worst_contract) +
               ") and IQC sign identity (worst " + format_double(worst_sign) +
               ") on 1000 feasible multipliers (" + format_double(dt) + " s)");
}

// 6. Inertia against the Sturm bisection oracle.
void criterion_6() {
    std::mt19937 rng(1006);
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Matrix S = test::random_symmetric(rng, 4, 2.0);
        const Inertia got = inertia(S, 1e-9);
        const oracle::InertiaCounts want = oracle::sturm_inertia_4x4(S, 1e-9);
        if (got.n_neg != want.n_neg || got.n_zero != want.n_zero ||
            got.n_pos != want.n_pos) {
            ++mismatches;
        }
    }
    report(6, mismatches == 0,
           "inertia matches the characteristic-polynomial root-sign oracle on 1000 "
           "random symmetric matrices (" + std::to_string(mismatches) +
               " mismatches)");
}

// 7. ARE oracles: scalar closed form and the Newton-Kleinman LQR comparison.
void criterion_7() {
    bool ok = true;
    const AreSolution scalar = solve_game_are(Matrix::Constant(1, 1, 1.0),
                                              Matrix::Constant(1, 1, -1.0),
                                              Matrix::Constant(1, 1, 1.0));
    ok = ok && std::abs(scalar.X(0, 0) - (1.0 + std::sqrt(2.0))) <= 1e-10;

    std::mt19937 rng(1007);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 2 + trial % 4;
        const Eigen::Index m = 1 + trial % 2;
        const Matrix A = test::random_hurwitz(rng, n, 0.5);
        const Matrix B = test::random_matrix(rng, n, m);
        const Matrix R = test::random_spd(rng, n);
        const Matrix G = test::random_spd(rng, m);
        CheckSystem sys;
        sys.Acheck = A;
        sys.B2ucheck = B;
        sys.n = static_cast<int>(n);
        sys.m = static_cast<int>(m);
        const TauSystem tausys = assemble(sys, MultiplierPoint{}, R, G);
        const SynthesisResult result = synthesize(tausys, sys);
        const Matrix K_want = oracle::newton_kleinman_gain(A, B, R, G);
        worst = std::max(worst,
                         (result.K - K_want).norm() / (1.0 + K_want.norm()));
    }
    ok = ok && worst <= 1e-9;
    report(7, ok,
           "scalar ARE X = 1 + sqrt(2) to 1e-10; LQR reduction matches "
           "Newton-Kleinman on 100 systems (worst " + format_double(worst) + ")");
}

// 8. Loop-shift commutation identity.
void criterion_8() {
    std::mt19937 rng(1008);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Matrix D = test::random_contraction(rng);
        const Matrix Phi = Matrix::Identity(2, 2) - D.transpose() * D;
        const Matrix Phibar = Matrix::Identity(2, 2) - D * D.transpose();
        worst = std::max(worst, (Phi.inverse() * D.transpose() -
                                 D.transpose() * Phibar.inverse())
                                    .norm());
    }
    report(8, worst <= 1e-12,
           "Phi^-1 D' = D' Phibar^-1 on 1000 random contractions (worst " +
               format_double(worst) + ")");
}

// 9. Simulator order and the Lyapunov cost oracle on the compressor model.
void criterion_9() {
    const ValidatedPlant plant = validate(test::surge_plant());
    const AugmentedPlant aug = build_augmented(plant);
    CheckSystem lin;
    lin.Acheck = aug.Atil;
    lin.B2ucheck = aug.B2u;
    lin.n = 3;
    lin.m = 3;
    const TauSystem tausys =
        assemble(lin, MultiplierPoint{}, plant.model().R, plant.model().G);
    const Matrix K = synthesize(tausys, lin).K;

    auto terminal = [&](double dt) {
        const Trajectory traj = simulate(plant, K, plant.model().x0,
                                         UncertaintyRealization::zero(), dt, 5.0);
        const Eigen::Index last = traj.t.size() - 1;
        Vector state(3);
        state << traj.x(last, 0), traj.x(last, 1), traj.mu_tilde(last, 0);
        return state;
    };
    const Vector ref = terminal(0.0025);
    const double ratio = (terminal(0.02) - ref).norm() / (terminal(0.01) - ref).norm();

    const Matrix Acl = aug.Atil + aug.B2u * K;
    const Matrix P = solve_lyapunov(
        Acl, plant.model().R + K.transpose() * plant.model().G * K);
    Vector x0aug(3);
    x0aug << 1.0, 0.0, 0.0;
    const double want = x0aug.dot(P * x0aug);
    std::vector<PsiFn> psi_off = {[](double) { return 0.0; }};
    const Trajectory traj = simulate(plant, K, plant.model().x0,
                                     UncertaintyRealization::zero(), 1e-3, 40.0,
                                     &psi_off);
    const double J = traj.running_cost(traj.running_cost.size() - 1);
    const double rel = std::abs(J - want) / want;
    const bool ok = ratio >= 12.0 && rel <= 1e-4;
    report(9, ok,
           "RK4 halving ratio " + format_double(ratio) +
               " >= 12; linear-loop cost vs Lyapunov relative error " +
               format_double(rel) + " <= 1e-4");
}

// 10. Search property and byte determinism, via the CLI binary.
void criterion_10() {
    const auto dir = std::filesystem::temp_directory_path() / "gcs_acceptance";
    std::filesystem::create_directories(dir);
    bool ok = true;

    const ToolConfig cfg = load_config(kConfigDir + "/surge_sector.json");
    const ValidatedPlant plant = validate(cfg.plant);
    const SearchReport rep = search(plant, *cfg.search, cfg.epsilon_S);
    ok = ok && rep.best.has_value();
    if (rep.best.has_value()) {
        for (const auto& entry : rep.trace) {
            if (entry.Vtau.has_value() && rep.best->Vtau > *entry.Vtau) ok = false;
        }
    }

    auto run_cli = [&](const std::string& args) {
        const std::string cmd = "'" + kCliPath + "' " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str());
    };
    const std::string cfg_path = kConfigDir + "/surge_sector.json";
    const std::string a = (dir / "a.json").string();
    const std::string b = (dir / "b.json").string();
    ok = ok && run_cli("synth -c '" + cfg_path + "' -o '" + a + "'") == 0;
    ok = ok && run_cli("synth -c '" + cfg_path + "' -o '" + b + "'") == 0;
    ok = ok && read_file(a) == read_file(b);
    const std::string sa = (dir / "a.csv").string();
    const std::string sb = (dir / "b.csv").string();
    ok = ok && run_cli("sweep -c '" + cfg_path + "' -o '" + sa + "'") == 0;
    ok = ok && run_cli("sweep -c '" + cfg_path + "' -o '" + sb + "'") == 0;
    ok = ok && read_file(sa) == read_file(sb);
    report(10, ok,
           "best V_tau is the sweep minimum; repeated synth and sweep runs are "
           "byte-identical");
}

}  // namespace

int main() {
    std::printf("acceptance suite (configs: %s)\n", kConfigDir.c_str());
    const SurgeRun surge = run_surge();
    criterion_1();
    criterion_2(surge);
    criterion_3(surge);
    criterion_4(surge);
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    // Demonstration of the certification machinery on the feasible slope-banded
    // variant of the same compressor (informational, not a criterion).
    {
        const ToolConfig cfg = load_config(kConfigDir + "/surge_sector.json");
        const ValidatedPlant plant = validate(cfg.plant);
        const SearchReport rep = search(plant, *cfg.search, cfg.epsilon_S);
        if (rep.best.has_value()) {
            bool bound_ok = true;
            for (double delta : {0.0, -1.0, -0.5, 0.5, 1.0}) {
                const UncertaintyRealization realization =
                    delta == 0.0 ? UncertaintyRealization::zero()
                                 : UncertaintyRealization::scaled(delta);
                const Trajectory traj = simulate(plant, rep.best->K, plant.model().x0,
                                                 realization, 1e-3, 20.0);
                bound_ok = bound_ok && !traj.diverged &&
                           traj.running_cost(traj.running_cost.size() - 1) <=
                               rep.best->Vtau;
            }
            info("slope-banded variant: V_tau = " + format_double(rep.best->Vtau) +
                 ", J <= V_tau over five realizations: " +
                 (bound_ok ? "yes" : "NO"));
        }
    }

    std::printf("acceptance: %d passed, %d failed\n", 10 - failures, failures);
    return failures;
}
