#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcs/config.hpp"

namespace gcs {

/// Exit codes shared by every subcommand: 0 ok, 1 infeasible (or bound
/// violated), 2 usage / data error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 1;
inline constexpr int kExitUsage = 2;

struct CheckArgs {
    std::string config_path;
    std::vector<double> tau;
    std::vector<std::array<double, 3>> lambda;
};

struct SynthArgs {
    std::string config_path;
    std::optional<std::string> out_path;
    std::optional<unsigned> seed;
};

struct SimulateArgs {
    std::string config_path;
    std::string controller_path;
    std::string out_path;
    std::optional<double> dt;
    std::optional<double> t_final;
    std::optional<std::string> realization;
};

struct SweepArgs {
    std::string config_path;
    std::string out_path;
    std::optional<unsigned> seed;
};

int cmd_check(const CheckArgs& args);
int cmd_synth(const SynthArgs& args);
int cmd_simulate(const SimulateArgs& args);
int cmd_sweep(const SweepArgs& args);

/// CLI11-based front end used by the gcs binary.
int run_cli(int argc, const char* const* argv);

}  // namespace gcs
