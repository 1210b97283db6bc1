#include "gcs/cli.hpp"

#include <cstdio>
#include <exception>
#include <iostream>

#include <CLI11.hpp>

namespace gcs {

namespace {

ToolConfig load_or_throw(const std::string& path) { return load_config(path); }

void print_point_diagnostics(const SynthesisResult& r) {
    for (size_t i = 0; i < r.diagnostics.pi_counts.size(); ++i) {
        std::printf("channel %zu: Pi = %d, det U11 = %s, D11 margin = %s\n", i,
                    r.diagnostics.pi_counts[i],
                    format_double(r.diagnostics.detU11s[i]).c_str(),
                    format_double(r.diagnostics.d11_margins[i]).c_str());
    }
    std::printf("ARE residual = %s\n", format_double(r.diagnostics.are_residual).c_str());
    std::printf("V_tau = %s\n", format_double(r.Vtau).c_str());
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const NoStabilizingSolution& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}

}  // namespace

int cmd_check(const CheckArgs& args) {
    return run_guarded([&]() -> int {
        const ToolConfig cfg = load_or_throw(args.config_path);
        const ValidatedPlant plant = validate(cfg.plant);
        if (static_cast<int>(args.tau.size()) != plant.k() ||
            static_cast<int>(args.lambda.size()) != plant.g()) {
            std::fprintf(stderr,
                         "error: need %d --tau value(s) and %d --lambda triple(s)\n",
                         plant.k(), plant.g());
            return kExitUsage;
        }
        MultiplierPoint point{args.tau, args.lambda};
        const EvalOutcome outcome = evaluate_point(plant, point, cfg.epsilon_S);
        if (outcome.feasible()) {
            print_point_diagnostics(*outcome.result);
            std::printf("feasible\n");
            return kExitOk;
        }
        std::printf("infeasible: %s\n", to_string(*outcome.reason));
        return kExitInfeasible;
    });
}

int cmd_synth(const SynthArgs& args) {
    return run_guarded([&]() -> int {
        const ToolConfig cfg = load_or_throw(args.config_path);
        const ValidatedPlant plant = validate(cfg.plant);
        if (!cfg.search.has_value()) {
            std::fprintf(stderr, "error: config has no search block\n");
            return kExitUsage;
        }
        SearchSpec spec = *cfg.search;
        if (args.seed.has_value()) spec.seed = *args.seed;
        const SearchReport report = search(plant, spec, cfg.epsilon_S);
        std::printf("evaluated %zu point(s), %zu feasible\n", report.evaluated,
                    report.feasible);
        for (const auto& [reason, count] : report.infeasible_reasons) {
            std::printf("  %s: %d\n", to_string(reason), count);
        }
        if (!report.best.has_value()) {
            std::printf("no feasible multiplier point\n");
            return kExitInfeasible;
        }
        print_point_diagnostics(*report.best);
        if (args.out_path.has_value()) {
            write_file(*args.out_path, emit_result(make_result_doc(*report.best)));
        }
        return kExitOk;
    });
}

int cmd_simulate(const SimulateArgs& args) {
    return run_guarded([&]() -> int {
        const ToolConfig cfg = load_or_throw(args.config_path);
        const ValidatedPlant plant = validate(cfg.plant);
        const ResultDoc doc = load_result(args.controller_path);
        if (doc.K.rows() != plant.m() + 2 * plant.g() ||
            doc.K.cols() != plant.n() + plant.g()) {
            std::fprintf(stderr, "error: controller K is %ldx%ld, expected %dx%d\n",
                         static_cast<long>(doc.K.rows()), static_cast<long>(doc.K.cols()),
                         plant.m() + 2 * plant.g(), plant.n() + plant.g());
            return kExitUsage;
        }
        SimConfig sim = cfg.sim;
        if (args.dt.has_value()) sim.dt = *args.dt;
        if (args.t_final.has_value()) sim.t_final = *args.t_final;
        if (args.realization.has_value()) {
            sim.realization = parse_realization(*args.realization);
        }
        const Trajectory traj = simulate(plant, doc.K, plant.model().x0, sim.realization,
                                         sim.dt, sim.t_final);
        write_file(args.out_path, trajectory_csv(traj));
        if (traj.diverged) {
            std::fprintf(stderr, "warning: state exceeded 1e12, partial trajectory written\n");
            return kExitInfeasible;
        }
        const double final_norm =
            std::sqrt(traj.x.bottomRows(1).squaredNorm() +
                      traj.mu_tilde.bottomRows(1).squaredNorm());
        if (final_norm > 1e-8) {
            std::fprintf(stderr,
                         "warning: |state(t_final)| = %s > 1e-8; cost truncation may matter\n",
                         format_double(final_norm).c_str());
        }
        const double J = traj.running_cost(traj.running_cost.size() - 1);
        std::printf("J = %s\n", format_double(J).c_str());
        if (J > doc.V_tau) {
            std::printf("bound violated: J > V_tau = %s\n", format_double(doc.V_tau).c_str());
            return kExitInfeasible;
        }
        std::printf("J <= V_tau = %s\n", format_double(doc.V_tau).c_str());
        return kExitOk;
    });
}

int cmd_sweep(const SweepArgs& args) {
    return run_guarded([&]() -> int {
        const ToolConfig cfg = load_or_throw(args.config_path);
        const ValidatedPlant plant = validate(cfg.plant);
        if (!cfg.search.has_value()) {
            std::fprintf(stderr, "error: config has no search block\n");
            return kExitUsage;
        }
        SearchSpec spec = *cfg.search;
        if (args.seed.has_value()) spec.seed = *args.seed;
        const SearchReport report = search(plant, spec, cfg.epsilon_S);
        write_file(args.out_path, sweep_csv(report, plant.k(), plant.g()));
        std::printf("evaluated %zu point(s), %zu feasible\n", report.evaluated,
                    report.feasible);
        return report.best.has_value() ? kExitOk : kExitInfeasible;
    });
}

namespace {

std::array<double, 3> parse_lambda_triple(const std::string& text) {
    std::array<double, 3> lam{};
    std::string item;
    std::stringstream ss(text);
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, item, ',')) {
            throw CLI::ValidationError("--lambda", "expected three comma-separated values");
        }
        lam[static_cast<size_t>(i)] = std::stod(item);
    }
    if (std::getline(ss, item, ',')) {
        throw CLI::ValidationError("--lambda", "expected exactly three values");
    }
    return lam;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Robust nonlinear state-feedback synthesis via IQC multipliers"};
    app.require_subcommand(1);

    CheckArgs check_args;
    std::vector<std::string> lambda_texts;
    auto* check = app.add_subcommand("check", "Evaluate feasibility at one multiplier point");
    check->add_option("-c,--config", check_args.config_path, "JSON plant config")->required();
    check->add_option("--tau", check_args.tau,
                      "tau multiplier per uncertainty channel");
    check->add_option("--lambda", lambda_texts,
                      "lambda triple per nonlinearity channel, e.g. 1,0.1,0.12");

    SynthArgs synth_args;
    unsigned synth_seed = 0;
    auto* synth = app.add_subcommand("synth", "Search multipliers and write the best result");
    synth->add_option("-c,--config", synth_args.config_path, "JSON plant config")->required();
    std::string synth_out;
    auto* synth_out_opt = synth->add_option("-o,--out", synth_out, "result JSON path");
    auto* synth_seed_opt = synth->add_option("--seed", synth_seed, "refinement simplex seed");

    SimulateArgs sim_args;
    double sim_dt = 0.0, sim_tf = 0.0;
    std::string sim_realization;
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate the closed nonlinear loop");
    simulate_cmd->add_option("-c,--config", sim_args.config_path, "JSON plant config")
        ->required();
    simulate_cmd->add_option("--controller", sim_args.controller_path, "result JSON")
        ->required();
    simulate_cmd->add_option("-o,--out", sim_args.out_path, "trajectory CSV path")->required();
    auto* dt_opt = simulate_cmd->add_option("--dt", sim_dt, "integration step (s)");
    auto* tf_opt = simulate_cmd->add_option("--t-final", sim_tf, "horizon (s)");
    auto* re_opt = simulate_cmd->add_option("--realization", sim_realization,
                                            "zero or scaled:<delta>");

    SweepArgs sweep_args;
    unsigned sweep_seed = 0;
    auto* sweep = app.add_subcommand("sweep", "Write the full search trace as CSV");
    sweep->add_option("-c,--config", sweep_args.config_path, "JSON plant config")->required();
    sweep->add_option("-o,--out", sweep_args.out_path, "sweep CSV path")->required();
    auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "refinement simplex seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (check->parsed()) {
            for (const auto& text : lambda_texts) {
                check_args.lambda.push_back(parse_lambda_triple(text));
            }
            return cmd_check(check_args);
        }
        if (synth->parsed()) {
            if (*synth_out_opt) synth_args.out_path = synth_out;
            if (*synth_seed_opt) synth_args.seed = synth_seed;
            return cmd_synth(synth_args);
        }
        if (simulate_cmd->parsed()) {
            if (*dt_opt) sim_args.dt = sim_dt;
            if (*tf_opt) sim_args.t_final = sim_tf;
            if (*re_opt) sim_args.realization = sim_realization;
            return cmd_simulate(sim_args);
        }
        if (sweep->parsed()) {
            if (*sweep_seed_opt) sweep_args.seed = sweep_seed;
            return cmd_sweep(sweep_args);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace gcs
