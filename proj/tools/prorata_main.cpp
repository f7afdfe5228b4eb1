// Command-line front end: scenario ingestion, equilibrium / fairness /
// weighted-rule / qualification-policy analysis, parameter sweeps.
//
// Exit codes: 0 success, 2 input or validation failure, 3 solver failure.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prorata/equilibrium.hpp"
#include "prorata/fairness.hpp"
#include "prorata/io.hpp"
#include "prorata/model.hpp"
#include "prorata/oracle.hpp"
#include "prorata/policy.hpp"
#include "prorata/rules.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace prorata;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

struct Options {
    std::string input;
    std::string out_dir = ".";
    std::vector<std::string> formats{"json"};
    std::string param;
    double min = 0.0, max = 0.0;
    int steps = 1;
    double alpha = 1.0;
    double d_hat = -1.0;
    bool verify = false;
    unsigned long long seed = 0;
};

bool wants(const Options& o, const std::string& fmt) {
    for (const auto& f : o.formats)
        if (f == fmt) return true;
    return false;
}

io::GameInput load_input(const Options& o) {
    std::ifstream in(o.input);
    if (!in) throw std::invalid_argument("cannot open input file: " + o.input);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("input is not valid JSON: ") + e.what());
    }
    return io::game_from_json(j);
}

void write_file(const Options& o, const std::string& name, const std::string& body) {
    fs::create_directories(o.out_dir);
    fs::path path = fs::path(o.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << body;
}

void write_json(const Options& o, const std::string& name, const json& j) {
    write_file(o, name, j.dump(2) + "\n");
}

int verify_or_fail(const ReducedGame& g, const EquilibriumResult& eq) {
    auto report = oracle::verify_equilibrium(g, eq.profile);
    if (!report.passes()) {
        std::cerr << "oracle check failed: best deviation gain "
                  << io::format_number(report.worst_gain()) << "\n";
        return kExitSolver;
    }
    return kExitOk;
}

std::vector<double> sweep_grid(const Options& o) {
    std::vector<double> points;
    if (o.steps == 1) {
        points.push_back(o.min);
        return points;
    }
    for (int k = 0; k < o.steps; ++k)
        points.push_back(o.min + (o.max - o.min) * k / (o.steps - 1));
    return points;
}

std::string sweep_row(double value, Regime regime, double total_fraud, int n_d,
                      const std::optional<double>& cutoff, double min_utility,
                      const std::string& fairer) {
    std::ostringstream os;
    os << io::format_number(value) << ',' << io::regime_name(regime) << ','
       << io::format_number(total_fraud) << ',' << n_d << ','
       << (cutoff ? io::format_number(*cutoff) : std::string()) << ','
       << io::format_number(min_utility) << ',' << fairer << '\n';
    return os.str();
}

int run_solve(const Options& o) {
    auto in = load_input(o);
    auto eq = solve(in.game);
    if (o.verify)
        if (int rc = verify_or_fail(in.game, eq); rc != kExitOk) return rc;

    json j = io::equilibrium_to_json(eq);
    if (eq.regime == Regime::Fraud)
        j["fairness"] = io::fairness_to_json(compare(in.game, eq));
    if (wants(o, "json")) write_json(o, "result.json", j);
    if (wants(o, "csv")) write_file(o, "artists.csv", io::artists_csv(in.game, eq));
    return kExitOk;
}

int run_fairness(const Options& o) {
    auto in = load_input(o);
    auto eq = solve(in.game);
    if (eq.regime != Regime::Fraud) {
        json j;
        j["regime"] = io::regime_name(eq.regime);
        j["note"] = "fraud-free equilibrium; fairness comparison is trivial";
        if (wants(o, "json")) write_json(o, "fairness.json", j);
        return kExitOk;
    }
    auto report = compare(in.game, eq);
    if (wants(o, "json")) write_json(o, "fairness.json", io::fairness_to_json(report));
    if (wants(o, "csv")) write_file(o, "fairness.csv", io::fairness_csv(report));
    return kExitOk;
}

int run_weighted(const Options& o) {
    auto in = load_input(o);
    auto eq = solve_weighted(in.game, o.alpha);
    if (o.verify && eq.regime == Regime::Fraud) {
        ReducedGame scaled = in.game;
        scaled.V *= o.alpha;
        scaled.lambda0 = scaled.lambda_bar * (1.0 + scaled.xi * scaled.V);
        if (int rc = verify_or_fail(scaled, eq); rc != kExitOk) return rc;
    }
    json j = io::equilibrium_to_json(eq);
    j["alpha"] = io::quantize(o.alpha);
    auto bound = max_alpha(in.game);
    j["max_alpha"] = io::quantize(bound.value);
    j["already_fraud_free"] = bound.already_fraud_free;
    if (wants(o, "json")) write_json(o, "weighted.json", j);
    if (wants(o, "csv")) write_file(o, "artists.csv", io::artists_csv(in.game, eq));
    return kExitOk;
}

int run_policy(const Options& o) {
    auto in = load_input(o);
    if (o.d_hat < 0.0)
        throw std::invalid_argument("policy: --d-hat must be supplied and non-negative");
    auto eq = solve(in.game);
    if (eq.regime != Regime::Fraud)
        throw std::invalid_argument("policy: baseline game is fraud-free; nothing to analyze");
    auto analysis = analyze(in.game, eq, o.d_hat);
    if (wants(o, "json")) write_json(o, "policy.json", io::policy_to_json(analysis));
    if (wants(o, "csv") && analysis.classification != ThresholdEffect::Uncharacterized)
        write_file(o, "policy.csv", io::policy_csv(analysis));
    return kExitOk;
}

int run_sweep(const Options& o) {
    auto in = load_input(o);
    if (o.param != "lambda0" && o.param != "alpha" && o.param != "d_hat")
        throw std::invalid_argument("sweep: --param must be lambda0, alpha or d_hat");
    if (o.steps < 1) throw std::invalid_argument("sweep: --steps must be >= 1");
    if (o.min > o.max && o.steps > 1)
        throw std::invalid_argument("sweep: --min must not exceed --max");

    std::ostringstream csv;
    csv << o.param << ",regime,T_star,n_d,d_star,min_utility,fairer\n";

    std::optional<EquilibriumResult> base_eq;
    if (o.param == "d_hat") {
        base_eq = solve(in.game);
        if (base_eq->regime != Regime::Fraud)
            throw std::invalid_argument("sweep: d_hat sweep needs a fraud-regime baseline");
    }

    for (double value : sweep_grid(o)) {
        if (o.param == "lambda0") {
            ReducedGame g;
            if (in.scenario) {
                Scenario s = *in.scenario;
                s.lambda0 = value;
                g = reduce(s);
            } else {
                g = in.game;
                g.lambda0 = value;
                g.V = (value - g.lambda_bar) / (g.xi * g.lambda_bar);
            }
            auto eq = solve(g);
            if (o.verify && eq.regime == Regime::Fraud)
                if (int rc = verify_or_fail(g, eq); rc != kExitOk) return rc;
            double min_u = *std::min_element(eq.utilities.begin(), eq.utilities.end());
            std::string fairer;
            if (eq.regime == Regime::Fraud)
                fairer = compare(g, eq).fairer ? "true" : "false";
            csv << sweep_row(value, eq.regime, eq.total_fraud, eq.n_dishonest(), eq.cutoff,
                             min_u, fairer);
        } else if (o.param == "alpha") {
            auto eq = solve_weighted(in.game, value);
            double min_u = *std::min_element(eq.utilities.begin(), eq.utilities.end());
            csv << sweep_row(value, eq.regime, eq.total_fraud, eq.n_dishonest(), eq.cutoff,
                             min_u, "");
        } else {
            auto analysis = analyze(in.game, *base_eq, value);
            std::ostringstream row;
            row << io::format_number(value) << ',' << io::effect_name(analysis.classification)
                << ',';
            if (analysis.classification == ThresholdEffect::Uncharacterized) {
                row << ",,,," << '\n';
            } else {
                int active = 0;
                for (double t : analysis.profile)
                    if (t > 0.0) ++active;
                double min_u =
                    *std::min_element(analysis.u_policy.begin(), analysis.u_policy.end());
                row << io::format_number(analysis.total_fraud) << ',' << active << ','
                    << io::format_number(*base_eq->cutoff) << ',' << io::format_number(min_u)
                    << ",\n";
            }
            csv << row.str();
        }
    }
    write_file(o, "sweep.csv", csv.str());
    return kExitOk;
}

int run_oracle_check(const Options& o) {
    auto in = load_input(o);
    auto eq = solve(in.game);
    if (int rc = verify_or_fail(in.game, eq); rc != kExitOk) return rc;

    if (eq.regime == Regime::Fraud) {
        // Independent route: best-response iteration from seeded random starts.
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> u(0.0, in.game.V / 2.0);
        for (int run = 0; run < 5; ++run) {
            StrategyProfile start(in.game.n());
            for (auto& t : start) t = u(rng);
            auto fixed = oracle::br_iterate(in.game, start);
            for (int i = 0; i < in.game.n(); ++i)
                if (std::fabs(fixed[i] - eq.profile[i]) > 1e-6) {
                    std::cerr << "oracle check failed: iteration disagrees at artist " << i
                              << "\n";
                    return kExitSolver;
                }
        }
    }
    std::cout << "oracle check passed\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibrium solver for the click-fraud game on pro-rata streaming platforms"};
    app.require_subcommand(1);

    Options o;
    auto add_common = [&o](CLI::App* cmd) {
        cmd->add_option("--input", o.input, "Scenario or reduced-game JSON file")->required();
        cmd->add_option("--out", o.out_dir, "Output directory");
        cmd->add_option("--format", o.formats, "Output formats (json, csv)");
        cmd->add_flag("--verify", o.verify, "Cross-check results with the grid oracle");
        cmd->add_option("--seed", o.seed, "Random seed for oracle starts");
    };

    auto* solve_cmd = app.add_subcommand("solve", "Classify the regime and solve");
    add_common(solve_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep a parameter, emit CSV");
    add_common(sweep_cmd);
    sweep_cmd->add_option("--param", o.param, "lambda0, alpha or d_hat")->required();
    sweep_cmd->add_option("--min", o.min, "Lowest parameter value")->required();
    sweep_cmd->add_option("--max", o.max, "Highest parameter value")->required();
    sweep_cmd->add_option("--steps", o.steps, "Grid points, endpoints inclusive")->required();

    auto* fairness_cmd = app.add_subcommand("fairness", "Egalitarian comparison");
    add_common(fairness_cmd);

    auto* weighted_cmd = app.add_subcommand("weighted", "Weighted-rule equilibrium");
    add_common(weighted_cmd);
    weighted_cmd->add_option("--alpha", o.alpha, "Blend weight in (0,1]")->required();

    auto* policy_cmd = app.add_subcommand("policy", "Qualification-threshold analysis");
    add_common(policy_cmd);
    policy_cmd->add_option("--d-hat", o.d_hat, "Streamshare qualification threshold");

    auto* oracle_cmd = app.add_subcommand("oracle-check", "Verify the solved equilibrium");
    add_common(oracle_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve_cmd->parsed()) return run_solve(o);
        if (sweep_cmd->parsed()) return run_sweep(o);
        if (fairness_cmd->parsed()) return run_fairness(o);
        if (weighted_cmd->parsed()) return run_weighted(o);
        if (policy_cmd->parsed()) return run_policy(o);
        if (oracle_cmd->parsed()) return run_oracle_check(o);
    } catch (const ScenarioError& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitSolver;
    }
    return kExitInput;
}
