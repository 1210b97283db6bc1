#include "gcs/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gcs {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            throw std::invalid_argument("config: unknown key '" + item.key() + "' in " +
                                        where);
        }
    }
}

Matrix parse_matrix(const json& j, const std::string& field) {
    if (!j.is_array() || j.empty() || !j.front().is_array()) {
        throw std::invalid_argument("config: " + field + " must be a nested array");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    Matrix M(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = j.at(static_cast<size_t>(r));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw std::invalid_argument("config: " + field + " has ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            M(r, c) = row.at(static_cast<size_t>(c)).get<double>();
        }
    }
    return M;
}

Vector parse_vector(const json& j, const std::string& field) {
    if (!j.is_array()) {
        throw std::invalid_argument("config: " + field + " must be an array");
    }
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = j.at(static_cast<size_t>(i)).get<double>();
    }
    return v;
}

json matrix_json(const Matrix& M) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

NonlinearChannel parse_nl_channel(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"B1bar", "C1bar", "D1bar", "N", "psi_poly"}, where);
    NonlinearChannel ch;
    ch.B1bar = parse_matrix(j.at("B1bar"), where + ".B1bar");
    ch.C1bar = parse_matrix(j.at("C1bar"), where + ".C1bar");
    ch.N = parse_matrix(j.at("N"), where + ".N");
    ch.psi_poly = parse_vector(j.at("psi_poly"), where + ".psi_poly");
    if (j.contains("D1bar")) {
        ch.D1bar = parse_matrix(j.at("D1bar"), where + ".D1bar");
    }
    return ch;
}

UncertaintyChannel parse_unc_channel(const json& j, const std::string& where,
                                     double epsilon_S) {
    reject_unknown_keys(j, {"B1", "C1", "D1", "M", "S"}, where);
    UncertaintyChannel ch;
    ch.B1 = parse_matrix(j.at("B1"), where + ".B1");
    ch.C1 = parse_matrix(j.at("C1"), where + ".C1");
    ch.M = parse_matrix(j.at("M"), where + ".M");
    if (j.contains("D1")) {
        ch.D1 = parse_matrix(j.at("D1"), where + ".D1");
    } else {
        ch.D1 = Matrix::Zero(ch.C1.rows(), 0);  // resized by the caller
    }
    if (j.contains("S")) {
        ch.S = parse_matrix(j.at("S"), where + ".S");
    } else {
        ch.S = epsilon_S * Matrix::Identity(ch.B1.rows(), ch.B1.rows());
    }
    return ch;
}

SearchSpec parse_search(const json& j) {
    reject_unknown_keys(
        j, {"tau_grid", "lambda_grid", "refine", "refine_iters", "refine_shrink", "seed"},
        "search");
    SearchSpec spec;
    if (j.contains("tau_grid")) {
        for (const auto& channel : j.at("tau_grid")) {
            spec.tau_grid.push_back(channel.get<std::vector<double>>());
        }
    }
    if (j.contains("lambda_grid")) {
        for (const auto& channel : j.at("lambda_grid")) {
            std::vector<std::array<double, 3>> lams;
            for (const auto& lam : channel) {
                if (!lam.is_array() || lam.size() != 3) {
                    throw std::invalid_argument("config: lambda_grid entries must be triples");
                }
                lams.push_back({lam.at(0).get<double>(), lam.at(1).get<double>(),
                                lam.at(2).get<double>()});
            }
            spec.lambda_grid.push_back(std::move(lams));
        }
    }
    spec.refine = j.value("refine", false);
    spec.refine_iters = j.value("refine_iters", 120);
    spec.refine_shrink = j.value("refine_shrink", 0.5);
    spec.seed = j.value("seed", 0u);
    if (spec.refine_shrink <= 0.0 || spec.refine_shrink >= 1.0) {
        throw std::invalid_argument("config: refine_shrink must be in (0, 1)");
    }
    return spec;
}

}  // namespace

UncertaintyRealization parse_realization(const std::string& text) {
    if (text == "zero") {
        return UncertaintyRealization::zero();
    }
    if (text.rfind("scaled:", 0) == 0) {
        const std::string num = text.substr(7);
        double delta = 0.0;
        const auto* begin = num.data();
        const auto* end = num.data() + num.size();
        const auto [ptr, ec] = std::from_chars(begin, end, delta);
        if (ec != std::errc() || ptr != end) {
            throw std::invalid_argument("realization: bad delta in '" + text + "'");
        }
        return UncertaintyRealization::scaled(delta);
    }
    throw std::invalid_argument("realization: expected 'zero' or 'scaled:<delta>', got '" +
                                text + "'");
}

ToolConfig parse_config(const std::string& json_text) {
    const json root = json::parse(json_text);
    reject_unknown_keys(root, {"plant", "cost", "x0", "search", "sim", "epsilon_S"},
                        "top level");
    ToolConfig cfg;
    cfg.epsilon_S = root.value("epsilon_S", 1e-6);

    const json& plant = root.at("plant");
    reject_unknown_keys(plant, {"A", "B2", "nonlinear_channels", "uncertainty_channels"},
                        "plant");
    cfg.plant.A = parse_matrix(plant.at("A"), "plant.A");
    cfg.plant.B2 = parse_matrix(plant.at("B2"), "plant.B2");
    const auto n = cfg.plant.A.rows();
    const auto m = cfg.plant.B2.cols();
    if (plant.contains("nonlinear_channels")) {
        int i = 0;
        for (const auto& j : plant.at("nonlinear_channels")) {
            auto ch = parse_nl_channel(j, "nonlinear_channels[" + std::to_string(i) + "]");
            if (ch.D1bar.size() == 0) ch.D1bar = Matrix::Zero(1, m);
            cfg.plant.nonlinear_channels.push_back(std::move(ch));
            ++i;
        }
    }
    if (plant.contains("uncertainty_channels")) {
        int j = 0;
        for (const auto& cj : plant.at("uncertainty_channels")) {
            auto ch = parse_unc_channel(cj, "uncertainty_channels[" + std::to_string(j) + "]",
                                        cfg.epsilon_S);
            if (ch.D1.cols() == 0) ch.D1 = Matrix::Zero(ch.C1.rows(), m);
            cfg.plant.uncertainty_channels.push_back(std::move(ch));
            ++j;
        }
    }
    const auto g = static_cast<Eigen::Index>(cfg.plant.nonlinear_channels.size());
    cfg.plant.R = Matrix::Identity(n + g, n + g);
    cfg.plant.G = Matrix::Identity(m + 2 * g, m + 2 * g);
    if (root.contains("cost")) {
        const json& cost = root.at("cost");
        reject_unknown_keys(cost, {"R", "G"}, "cost");
        if (cost.contains("R")) cfg.plant.R = parse_matrix(cost.at("R"), "cost.R");
        if (cost.contains("G")) cfg.plant.G = parse_matrix(cost.at("G"), "cost.G");
    }
    cfg.plant.x0 = parse_vector(root.at("x0"), "x0");

    if (root.contains("search")) {
        cfg.search = parse_search(root.at("search"));
    }
    if (root.contains("sim")) {
        const json& sim = root.at("sim");
        reject_unknown_keys(sim, {"dt", "t_final", "realization"}, "sim");
        cfg.sim.dt = sim.value("dt", 1e-3);
        cfg.sim.t_final = sim.value("t_final", 20.0);
        if (sim.contains("realization")) {
            cfg.sim.realization = parse_realization(sim.at("realization").get<std::string>());
        }
    }
    return cfg;
}

ToolConfig load_config(const std::string& path) {
    return parse_config(read_file(path));
}

ResultDoc make_result_doc(const SynthesisResult& result) {
    ResultDoc doc;
    doc.tau = result.point.tau;
    doc.lambda = result.point.lambda;
    doc.V_tau = result.Vtau;
    doc.K = result.K;
    doc.X = result.X;
    doc.pi_count = result.diagnostics.pi_counts;
    doc.detU11 = result.diagnostics.detU11s;
    doc.d11_margin = result.diagnostics.d11_margins;
    doc.are_residual = result.diagnostics.are_residual;
    for (Eigen::Index i = 0; i < result.diagnostics.closed_loop_spectrum.size(); ++i) {
        const auto z = result.diagnostics.closed_loop_spectrum(i);
        doc.closed_loop_spectrum.push_back({z.real(), z.imag()});
    }
    return doc;
}

std::string emit_result(const ResultDoc& doc) {
    json j;
    j["tool_version"] = doc.tool_version;
    j["tau"] = doc.tau;
    json lams = json::array();
    for (const auto& lam : doc.lambda) lams.push_back({lam[0], lam[1], lam[2]});
    j["lambda"] = std::move(lams);
    j["V_tau"] = doc.V_tau;
    j["K"] = matrix_json(doc.K);
    j["X"] = matrix_json(doc.X);
    json diag;
    diag["pi_count"] = doc.pi_count;
    diag["detU11"] = doc.detU11;
    diag["d11_margin"] = doc.d11_margin;
    diag["are_residual"] = doc.are_residual;
    json spec = json::array();
    for (const auto& z : doc.closed_loop_spectrum) spec.push_back({z[0], z[1]});
    diag["closed_loop_spectrum"] = std::move(spec);
    j["diagnostics"] = std::move(diag);
    return j.dump(2) + "\n";
}

ResultDoc parse_result(const std::string& json_text) {
    const json j = json::parse(json_text);
    reject_unknown_keys(j, {"tool_version", "tau", "lambda", "V_tau", "K", "X", "diagnostics"},
                        "result");
    ResultDoc doc;
    doc.tool_version = j.at("tool_version").get<std::string>();
    doc.tau = j.at("tau").get<std::vector<double>>();
    for (const auto& lam : j.at("lambda")) {
        doc.lambda.push_back(
            {lam.at(0).get<double>(), lam.at(1).get<double>(), lam.at(2).get<double>()});
    }
    doc.V_tau = j.at("V_tau").get<double>();
    doc.K = parse_matrix(j.at("K"), "result.K");
    doc.X = parse_matrix(j.at("X"), "result.X");
    const json& diag = j.at("diagnostics");
    doc.pi_count = diag.at("pi_count").get<std::vector<int>>();
    doc.detU11 = diag.at("detU11").get<std::vector<double>>();
    doc.d11_margin = diag.at("d11_margin").get<std::vector<double>>();
    doc.are_residual = diag.at("are_residual").get<double>();
    for (const auto& z : diag.at("closed_loop_spectrum")) {
        doc.closed_loop_spectrum.push_back({z.at(0).get<double>(), z.at(1).get<double>()});
    }
    return doc;
}

ResultDoc load_result(const std::string& path) {
    return parse_result(read_file(path));
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double failed");
    }
    return std::string(buf, ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    const Eigen::Index n = traj.x.cols(), g = traj.mu_tilde.cols(), m = traj.u.cols();
    out << "t";
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x" << i;
    for (Eigen::Index i = 1; i <= g; ++i) out << ",mu" << i;
    for (Eigen::Index i = 1; i <= m; ++i) out << ",u" << i;
    for (Eigen::Index i = 1; i <= g; ++i) out << ",nu" << i;
    for (Eigen::Index i = 1; i <= g; ++i) out << ",nut" << i;
    out << ",J\n";
    for (Eigen::Index row = 0; row < traj.t.size(); ++row) {
        out << format_double(traj.t(row));
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(traj.x(row, i));
        for (Eigen::Index i = 0; i < g; ++i) out << ',' << format_double(traj.mu_tilde(row, i));
        for (Eigen::Index i = 0; i < m; ++i) out << ',' << format_double(traj.u(row, i));
        for (Eigen::Index i = 0; i < g; ++i) out << ',' << format_double(traj.nu(row, i));
        for (Eigen::Index i = 0; i < g; ++i) out << ',' << format_double(traj.nu_tilde(row, i));
        out << ',' << format_double(traj.running_cost(row)) << '\n';
    }
    return out.str();
}

std::string sweep_csv(const SearchReport& report, int k, int g) {
    std::ostringstream out;
    for (int j = 1; j <= k; ++j) out << "tau" << j << ',';
    for (int i = 1; i <= g; ++i) {
        out << "lam" << i << "_1,lam" << i << "_2,lam" << i << "_3,";
    }
    out << "status,V_tau\n";
    for (const auto& entry : report.trace) {
        for (double t : entry.point.tau) out << format_double(t) << ',';
        for (const auto& lam : entry.point.lambda) {
            out << format_double(lam[0]) << ',' << format_double(lam[1]) << ','
                << format_double(lam[2]) << ',';
        }
        if (entry.Vtau.has_value()) {
            out << "feasible," << format_double(*entry.Vtau) << '\n';
        } else {
            out << to_string(*entry.reason) << ",\n";
        }
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open for writing: " + path);
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace gcs
