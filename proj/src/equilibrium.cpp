#include "prorata/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace prorata {

namespace {

constexpr int kBisectionCap = 200;

EquilibriumResult finalize(const ReducedGame& g, double total_fraud, double cutoff,
                           std::vector<int> dishonest, StrategyProfile profile) {
    EquilibriumResult r;
    r.regime = Regime::Fraud;
    r.total_fraud = total_fraud;
    r.cutoff = cutoff;
    std::sort(dishonest.begin(), dishonest.end());
    r.dishonest = std::move(dishonest);
    r.profile = std::move(profile);
    r.utilities.resize(g.n());
    for (int i = 0; i < g.n(); ++i) r.utilities[i] = utility(g, r.profile, i);
    r.worst_case = r.n_dishonest() == g.n();
    r.ratio_bounds = bounds_envelope(r.n_dishonest(), g.V);
    r.near_boundary = near_regime_boundary(g);
    return r;
}

}  // namespace

double honesty_threshold(double streamshare) {
    if (!(streamshare >= 0.0 && streamshare < 1.0))
        throw std::domain_error("honesty_threshold: streamshare must lie in [0,1)");
    return streamshare <= 0.5 ? 1.0 / (1.0 - streamshare) : 4.0 * streamshare;
}

bool honesty_dominant(const ReducedGame& g, int i) {
    if (i < 0 || i >= g.n()) throw std::out_of_range("honesty_dominant: index out of range");
    if (g.V <= 0.0) return true;
    return g.V <= honesty_threshold(g.d[i]);
}

Regime classify(const ReducedGame& g) {
    if (g.V <= 0.0) return Regime::FraudFree;
    // Compare on lambda0 so a boundary scenario built from the same
    // expression classifies fraud-free bit-exactly.
    double threshold = g.lambda_bar * (1.0 + g.xi / (1.0 - g.d_min()));
    return g.lambda0 <= threshold ? Regime::FraudFree : Regime::Fraud;
}

bool near_regime_boundary(const ReducedGame& g) {
    return std::fabs(g.V - 1.0 / (1.0 - g.d_min())) < 1e-9;
}

double best_response(const ReducedGame& g, int i, double tau) {
    if (i < 0 || i >= g.n()) throw std::out_of_range("best_response: index out of range");
    if (tau < 0.0) throw std::invalid_argument("best_response: opponents' total must be >= 0");
    if (g.V <= 0.0) return 0.0;
    double interior = std::sqrt((1.0 - g.d[i] + tau) * g.V) - (1.0 + tau);
    return std::max(0.0, interior);
}

EquilibriumResult solve_closed_form(const ReducedGame& g) {
    if (classify(g) != Regime::Fraud)
        throw std::invalid_argument("solve_closed_form: game is fraud-free");

    const int n = g.n();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&g](int a, int b) { return g.d[a] < g.d[b]; });

    double prefix = 0.0;
    for (int nd = 1; nd <= n; ++nd) {
        prefix += g.d[order[nd - 1]];
        double half = (nd - 1) * g.V / (2.0 * nd);
        double ratio = std::sqrt(half * half + (1.0 - prefix) * g.V / nd) + half;
        double total_fraud = ratio - 1.0;
        if (total_fraud <= 0.0) continue;
        double cutoff = (prefix + total_fraud) / nd;

        // Cutoff consistency: cheaters strictly below, others weakly above.
        if (!(g.d[order[nd - 1]] < cutoff)) continue;
        if (nd < n && !(g.d[order[nd]] >= cutoff)) continue;

        double foc_cutoff = ratio - ratio * ratio / g.V;
        if (std::fabs(cutoff - foc_cutoff) > 1e-9 * std::max(1.0, std::fabs(cutoff)))
            throw std::runtime_error(
                "solve_closed_form: cutoff fails the first-order self-consistency check");

        StrategyProfile profile(n, 0.0);
        std::vector<int> dishonest;
        dishonest.reserve(nd);
        for (int k = 0; k < nd; ++k) {
            int idx = order[k];
            profile[idx] = cutoff - g.d[idx];
            dishonest.push_back(idx);
        }
        return finalize(g, total_fraud, cutoff, std::move(dishonest), std::move(profile));
    }
    throw std::runtime_error("solve_closed_form: no consistent dishonest set found");
}

EquilibriumResult solve_fixed_point(const ReducedGame& g) {
    if (classify(g) != Regime::Fraud)
        throw std::invalid_argument("solve_fixed_point: game is fraud-free");

    // F(T) = sum_i max{d_i, (1+T) - (1+T)^2/V} / (1+T) - 1, strictly decreasing,
    // with F(0) >= 0 and F(V-1) = 1/V - 1 <= 0.
    auto residual = [&g](double total) {
        double ratio = 1.0 + total;
        double cutoff = ratio - ratio * ratio / g.V;
        double sum = 0.0;
        for (double di : g.d) sum += std::max(di, cutoff) / ratio;
        return sum - 1.0;
    };

    double lo = 0.0, hi = g.V - 1.0;
    if (residual(lo) < 0.0 || residual(hi) > 1e-12)
        throw std::runtime_error("solve_fixed_point: bracket does not straddle the root");

    int iterations = 0;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        if (++iterations > kBisectionCap)
            throw std::runtime_error("solve_fixed_point: bisection failed to converge");
        double mid = 0.5 * (lo + hi);
        (residual(mid) >= 0.0 ? lo : hi) = mid;
    }

    double total = 0.5 * (lo + hi);
    double ratio = 1.0 + total;
    double cutoff = ratio - ratio * ratio / g.V;

    StrategyProfile profile(g.n(), 0.0);
    std::vector<int> dishonest;
    double aggregate = 0.0;
    for (int i = 0; i < g.n(); ++i)
        if (g.d[i] < cutoff) {
            profile[i] = cutoff - g.d[i];
            aggregate += profile[i];
            dishonest.push_back(i);
        }
    if (dishonest.empty())
        throw std::runtime_error("solve_fixed_point: root yields an empty dishonest set");
    return finalize(g, aggregate, cutoff, std::move(dishonest), std::move(profile));
}

EquilibriumResult solve(const ReducedGame& g) {
    if (classify(g) == Regime::Fraud) return solve_closed_form(g);
    EquilibriumResult r;
    r.regime = Regime::FraudFree;
    r.profile.assign(g.n(), 0.0);
    r.utilities.resize(g.n());
    for (int i = 0; i < g.n(); ++i) r.utilities[i] = utility(g, r.profile, i);
    r.near_boundary = near_regime_boundary(g);
    return r;
}

std::pair<double, double> bounds_envelope(int n_dishonest, double V) {
    if (n_dishonest < 1) throw std::invalid_argument("bounds_envelope: need n_dishonest >= 1");
    if (!(V > 0.0)) throw std::invalid_argument("bounds_envelope: need V > 0");
    double lower = (n_dishonest - 1) * V / n_dishonest;
    double half = (n_dishonest - 1) * V / (2.0 * n_dishonest);
    double upper = std::sqrt(half * half + V / n_dishonest) + half;
    return {lower, upper};
}

bool is_worst_case(const ReducedGame& g) {
    if (classify(g) != Regime::Fraud)
        throw std::invalid_argument("is_worst_case: game is fraud-free");
    int n = g.n();
    return g.d_max() < (n - 1) * g.V / (static_cast<double>(n) * n);
}

}  // namespace prorata
