#include "prorata/model.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace prorata {

namespace {

constexpr double kColumnSumTol = 1e-9;  // absolute

std::string describe(const std::vector<Violation>& v) {
    std::ostringstream os;
    os << "invalid scenario (" << v.size() << " violation" << (v.size() == 1 ? "" : "s") << ")";
    for (const auto& item : v) {
        os << "; " << item.field;
        if (item.index >= 0) os << "[" << item.index << "]";
        os << ": " << item.message;
    }
    return os.str();
}

}  // namespace

ScenarioError::ScenarioError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

double ReducedGame::d_min() const {
    double v = d.empty() ? 0.0 : d[0];
    for (double x : d) v = std::min(v, x);
    return v;
}

double ReducedGame::d_max() const {
    double v = d.empty() ? 0.0 : d[0];
    for (double x : d) v = std::max(v, x);
    return v;
}

ReducedGame ReducedGame::from_normalized(std::vector<double> d, double xi, double V) {
    if (d.size() < 2) throw std::invalid_argument("from_normalized: need at least two artists");
    double sum = std::accumulate(d.begin(), d.end(), 0.0);
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("from_normalized: streamshares must sum to 1");
    for (double x : d)
        if (x < 0.0 || x >= 1.0)
            throw std::invalid_argument("from_normalized: each streamshare must lie in [0,1)");
    if (xi <= 0.0) throw std::invalid_argument("from_normalized: xi must be positive");
    double lambda0 = 1.0 + xi * V;
    if (lambda0 <= 0.0)
        throw std::invalid_argument("from_normalized: V below -1/xi has no positive fraud technology");

    ReducedGame g;
    g.uc_shares = d;  // single user: per-user shares equal the streamshares
    g.d = std::move(d);
    g.xi = xi;
    g.V = V;
    g.lambda_bar = 1.0;
    g.lambda0 = lambda0;
    g.beta = 0.5;
    g.delta = g.beta * (1.0 + xi);
    g.m = 1;
    return g;
}

std::vector<Violation> validate(const Scenario& s) {
    std::vector<Violation> out;
    auto add = [&out](std::string field, int index, double observed, std::string message) {
        out.push_back({std::move(field), index, observed, std::move(message)});
    };

    if (s.n < 2) add("n", -1, s.n, "need at least 2 artists");
    if (s.m < 1) add("m", -1, s.m, "need at least 1 user");
    if (static_cast<int>(s.user_streams.size()) != s.m)
        add("user_streams", -1, static_cast<double>(s.user_streams.size()),
            "size must equal m");
    if (static_cast<std::size_t>(s.n) * static_cast<std::size_t>(std::max(s.m, 0)) !=
        s.stream_shares.size())
        add("stream_shares", -1, static_cast<double>(s.stream_shares.size()),
            "size must equal n*m");
    if (!(s.beta > 0.0 && s.beta < 1.0)) add("beta", -1, s.beta, "beta must lie in (0,1)");
    if (!(s.delta > 1.0)) add("delta", -1, s.delta, "delta must exceed 1");
    if (!(s.lambda0 > 0.0)) add("lambda0", -1, s.lambda0, "lambda0 must be positive");
    if (!out.empty()) return out;  // shape errors make the rest meaningless

    for (int j = 0; j < s.m; ++j)
        if (!(s.user_streams[j] > 0.0))
            add("user_streams", j, s.user_streams[j], "streams must be positive");

    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.m; ++j) {
            double p = s.share(i, j);
            if (!(p >= 0.0 && p <= 1.0))
                add("stream_shares", i * s.m + j, p, "share must lie in [0,1]");
        }

    for (int j = 0; j < s.m; ++j) {
        double col = 0.0;
        for (int i = 0; i < s.n; ++i) col += s.share(i, j);
        if (std::fabs(col - 1.0) > kColumnSumTol)
            add("stream_shares", j, col, "user column must sum to 1");
    }

    if (out.empty()) {
        double total = std::accumulate(s.user_streams.begin(), s.user_streams.end(), 0.0);
        for (int i = 0; i < s.n; ++i) {
            double streams = 0.0;
            for (int j = 0; j < s.m; ++j) streams += s.user_streams[j] * s.share(i, j);
            if (!(streams / total < 1.0))
                add("stream_shares", i, streams / total,
                    "artist is a monopolist (streamshare must stay below 1)");
        }
    }
    return out;
}

Scenario renormalize_columns(Scenario s) {
    for (int j = 0; j < s.m; ++j) {
        double col = 0.0;
        for (int i = 0; i < s.n; ++i) col += s.share(i, j);
        if (col <= 0.0) continue;
        for (int i = 0; i < s.n; ++i)
            s.stream_shares[static_cast<std::size_t>(i) * s.m + j] /= col;
    }
    return s;
}

ReducedGame reduce(const Scenario& s) {
    auto violations = validate(s);
    if (!violations.empty()) throw ScenarioError(std::move(violations));

    double total = std::accumulate(s.user_streams.begin(), s.user_streams.end(), 0.0);
    ReducedGame g;
    g.d.resize(s.n);
    g.uc_shares.resize(s.n);
    for (int i = 0; i < s.n; ++i) {
        double streams = 0.0, uc = 0.0;
        for (int j = 0; j < s.m; ++j) {
            streams += s.user_streams[j] * s.share(i, j);
            uc += s.share(i, j);
        }
        g.d[i] = streams / total;
        g.uc_shares[i] = uc;
    }
    g.xi = (s.delta - s.beta) / s.beta;
    g.lambda_bar = total / s.m;
    g.V = (s.lambda0 - g.lambda_bar) / (g.xi * g.lambda_bar);
    g.lambda0 = s.lambda0;
    g.beta = s.beta;
    g.delta = s.delta;
    g.m = s.m;
    return g;
}

double utility(const ReducedGame& g, const StrategyProfile& t, int i) {
    if (i < 0 || i >= g.n()) throw std::out_of_range("utility: artist index out of range");
    if (static_cast<int>(t.size()) != g.n())
        throw std::invalid_argument("utility: profile size must equal artist count");
    double total = std::accumulate(t.begin(), t.end(), 0.0);
    return (g.d[i] + t[i]) / (1.0 + total) * g.V - t[i] + g.d[i] / g.xi;
}

namespace {
void check_fraud_vector(const Scenario& s, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != s.n)
        throw std::invalid_argument("fraud vector size must equal artist count");
    for (double v : x)
        if (v < 0.0) throw std::invalid_argument("fraud activity must be non-negative");
}
}  // namespace

double net_gain_prorata(const Scenario& s, const std::vector<double>& x, int i) {
    check_fraud_vector(s, x);
    if (i < 0 || i >= s.n) throw std::out_of_range("net_gain_prorata: artist index out of range");

    double total_streams = std::accumulate(s.user_streams.begin(), s.user_streams.end(), 0.0);
    double real_i = 0.0;
    for (int j = 0; j < s.m; ++j) real_i += s.user_streams[j] * s.share(i, j);
    double fake_total = std::accumulate(x.begin(), x.end(), 0.0);

    double share = (real_i + s.lambda0 * x[i]) / (total_streams + s.lambda0 * fake_total);
    return share * (s.m + fake_total) * s.beta - s.delta * x[i];
}

double net_gain_usercentric(const Scenario& s, const std::vector<double>& x, int i) {
    check_fraud_vector(s, x);
    if (i < 0 || i >= s.n)
        throw std::out_of_range("net_gain_usercentric: artist index out of range");
    double uc = 0.0;
    for (int j = 0; j < s.m; ++j) uc += s.share(i, j);
    return (uc + x[i]) * s.beta - s.delta * x[i];
}

StrategyProfile ratios_from_fake_users(const ReducedGame& g, const std::vector<double>& x) {
    StrategyProfile t(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < 0.0) throw std::invalid_argument("fraud activity must be non-negative");
        t[i] = g.lambda0 * x[i] / (g.m * g.lambda_bar);
    }
    return t;
}

std::vector<double> fake_users_from_ratios(const ReducedGame& g, const StrategyProfile& t) {
    std::vector<double> x(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0.0) throw std::invalid_argument("fake-stream ratio must be non-negative");
        x[i] = t[i] * g.m * g.lambda_bar / g.lambda0;
    }
    return x;
}

}  // namespace prorata
