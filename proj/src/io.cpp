#include "prorata/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace prorata::io {

using nlohmann::json;

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double quantize(double v) {
    return std::strtod(format_number(v).c_str(), nullptr);
}

namespace {

json quantized_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(quantize(x));
    return a;
}

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw std::invalid_argument(std::string("input: missing or non-numeric field '") +
                                    key + "'");
    return j.at(key).get<double>();
}

std::vector<double> require_vector(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw std::invalid_argument(std::string("input: missing or non-array field '") + key +
                                    "'");
    std::vector<double> out;
    for (const auto& x : j.at(key)) {
        if (!x.is_number())
            throw std::invalid_argument(std::string("input: non-numeric entry in '") + key +
                                        "'");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace

json scenario_to_json(const Scenario& s) {
    json j;
    j["n"] = s.n;
    j["m"] = s.m;
    j["user_streams"] = s.user_streams;
    json rows = json::array();
    for (int i = 0; i < s.n; ++i) {
        json row = json::array();
        for (int k = 0; k < s.m; ++k) row.push_back(s.share(i, k));
        rows.push_back(row);
    }
    j["stream_shares"] = rows;
    j["beta"] = s.beta;
    j["delta"] = s.delta;
    j["lambda0"] = s.lambda0;
    return j;
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.n = static_cast<int>(require_number(j, "n"));
    s.m = static_cast<int>(require_number(j, "m"));
    s.user_streams = require_vector(j, "user_streams");
    if (!j.contains("stream_shares") || !j.at("stream_shares").is_array())
        throw std::invalid_argument("input: missing or non-array field 'stream_shares'");
    const auto& rows = j.at("stream_shares");
    if (static_cast<int>(rows.size()) != s.n)
        throw std::invalid_argument("input: 'stream_shares' must have n rows");
    for (const auto& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != s.m)
            throw std::invalid_argument("input: each 'stream_shares' row must have m entries");
        for (const auto& x : row) {
            if (!x.is_number())
                throw std::invalid_argument("input: non-numeric entry in 'stream_shares'");
            s.stream_shares.push_back(x.get<double>());
        }
    }
    s.beta = require_number(j, "beta");
    s.delta = require_number(j, "delta");
    s.lambda0 = require_number(j, "lambda0");
    return s;
}

GameInput game_from_json(const json& j) {
    GameInput in;
    if (j.contains("stream_shares")) {
        in.scenario = scenario_from_json(j);
        in.game = reduce(*in.scenario);
        return in;
    }
    auto d = require_vector(j, "d");
    double xi = require_number(j, "xi");
    double V = require_number(j, "V");
    in.game = ReducedGame::from_normalized(std::move(d), xi, V);
    if (j.contains("uc_shares")) in.game.uc_shares = require_vector(j, "uc_shares");
    if (j.contains("m")) in.game.m = static_cast<int>(require_number(j, "m"));
    if (j.contains("lambda_bar")) in.game.lambda_bar = require_number(j, "lambda_bar");
    if (j.contains("lambda0")) {
        in.game.lambda0 = require_number(j, "lambda0");
        double implied = in.game.lambda_bar * (1.0 + in.game.xi * in.game.V);
        if (std::fabs(in.game.lambda0 - implied) > 1e-9 * std::max(1.0, std::fabs(implied)))
            throw std::invalid_argument(
                "input: lambda0 inconsistent with lambda_bar*(1 + xi*V)");
    } else if (j.contains("lambda_bar")) {
        in.game.lambda0 = in.game.lambda_bar * (1.0 + in.game.xi * in.game.V);
    }
    if (static_cast<int>(in.game.uc_shares.size()) != in.game.n())
        throw std::invalid_argument("input: uc_shares size must equal artist count");
    return in;
}

std::string regime_name(Regime r) {
    return r == Regime::Fraud ? "Fraud" : "FraudFree";
}

std::string effect_name(ThresholdEffect e) {
    switch (e) {
        case ThresholdEffect::NoEffect: return "NoEffect";
        case ThresholdEffect::SlightlyHigh: return "SlightlyHigh";
        case ThresholdEffect::Uncharacterized: return "Uncharacterized";
    }
    return "Unknown";
}

json equilibrium_to_json(const EquilibriumResult& eq) {
    json j;
    j["regime"] = regime_name(eq.regime);
    j["T_star"] = quantize(eq.total_fraud);
    j["d_star"] = eq.cutoff ? json(quantize(*eq.cutoff)) : json(nullptr);
    j["n_d"] = eq.n_dishonest();
    j["dishonest"] = eq.dishonest;
    j["t_star"] = quantized_array(eq.profile);
    j["utilities"] = quantized_array(eq.utilities);
    j["worst_case"] = eq.worst_case;
    j["bounds"] = {{"lower", quantize(eq.ratio_bounds.first)},
                   {"upper", quantize(eq.ratio_bounds.second)}};
    j["near_boundary"] = eq.near_boundary;
    return j;
}

json fairness_to_json(const FairnessReport& r) {
    json j;
    j["u_star"] = quantized_array(r.u_star);
    j["u_zero"] = quantized_array(r.u_zero);
    j["min_star"] = quantize(r.min_star);
    j["min_zero"] = quantize(r.min_zero);
    j["fairer"] = r.fairer;
    j["condition_rhs"] = quantize(r.condition_rhs);
    j["condition_holds"] = r.condition_holds;
    j["knife_edge"] = r.knife_edge;
    return j;
}

json policy_to_json(const PolicyAnalysis& a) {
    json j;
    j["d_hat"] = quantize(a.share_threshold);
    j["classification"] = effect_name(a.classification);
    j["theta_star"] = quantize(a.theta_star);
    j["theta_double_star"] = quantize(a.theta_double_star);
    if (a.classification != ThresholdEffect::Uncharacterized) {
        j["t_hat"] = quantized_array(a.profile);
        j["T_hat"] = quantize(a.total_fraud);
        j["u_hat"] = quantized_array(a.u_policy);
        j["u_star"] = quantized_array(a.u_baseline);
        j["welfare_delta"] = quantized_array(a.welfare_delta);
        j["equilibrium_verified"] = a.equilibrium_verified;
        j["indifferent"] = a.indifferent;
    }
    return j;
}

std::string artists_csv(const ReducedGame& g, const EquilibriumResult& eq) {
    std::ostringstream os;
    os << "index,d,t_star,utility\n";
    for (int i = 0; i < g.n(); ++i)
        os << i << ',' << format_number(g.d[i]) << ',' << format_number(eq.profile[i]) << ','
           << format_number(eq.utilities[i]) << '\n';
    return os.str();
}

std::string fairness_csv(const FairnessReport& r) {
    std::ostringstream os;
    os << "artist,u_zero,u_star,delta\n";
    for (std::size_t i = 0; i < r.u_star.size(); ++i)
        os << i << ',' << format_number(r.u_zero[i]) << ',' << format_number(r.u_star[i]) << ','
           << format_number(r.u_star[i] - r.u_zero[i]) << '\n';
    return os.str();
}

std::string policy_csv(const PolicyAnalysis& a) {
    std::ostringstream os;
    os << "artist,u_star,u_hat,delta\n";
    for (std::size_t i = 0; i < a.u_policy.size(); ++i)
        os << i << ',' << format_number(a.u_baseline[i]) << ',' << format_number(a.u_policy[i])
           << ',' << format_number(a.welfare_delta[i]) << '\n';
    return os.str();
}

}  // namespace prorata::io
