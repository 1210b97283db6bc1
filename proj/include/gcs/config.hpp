#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gcs/model.hpp"
#include "gcs/sim.hpp"
#include "gcs/synthesis.hpp"

namespace gcs {

inline constexpr const char* kToolVersion = "0.1.0";

struct SimConfig {
    double dt = 1e-3;
    double t_final = 20.0;
    UncertaintyRealization realization;
};

/// Parsed CLI configuration file. Unknown keys are rejected.
struct ToolConfig {
    PlantModel plant;
    std::optional<SearchSpec> search;
    SimConfig sim;
    double epsilon_S = 1e-6;
};

ToolConfig parse_config(const std::string& json_text);
ToolConfig load_config(const std::string& path);

/// Serialized synthesis result; numeric content round-trips losslessly.
struct ResultDoc {
    std::string tool_version = kToolVersion;
    std::vector<double> tau;
    std::vector<std::array<double, 3>> lambda;
    double V_tau = 0.0;
    Matrix K;
    Matrix X;
    std::vector<int> pi_count;
    std::vector<double> detU11;
    std::vector<double> d11_margin;
    double are_residual = 0.0;
    std::vector<std::array<double, 2>> closed_loop_spectrum;  // (re, im)
};

ResultDoc make_result_doc(const SynthesisResult& result);
std::string emit_result(const ResultDoc& doc);
ResultDoc parse_result(const std::string& json_text);
ResultDoc load_result(const std::string& path);

/// Shortest round-trip decimal form of a double (17 significant digits when
/// needed).
std::string format_double(double v);

/// Trajectory CSV: header t,x1..xn,mu1..mug,u1..um,nu1..nug,nut1..nutg,J.
std::string trajectory_csv(const Trajectory& traj);

/// Sweep CSV: one row per evaluated point in trace order.
std::string sweep_csv(const SearchReport& report, int k, int g);

UncertaintyRealization parse_realization(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace gcs
