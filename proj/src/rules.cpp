#include "prorata/rules.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prorata {

namespace {
void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("weighted rule: alpha must lie in (0,1]");
}

ReducedGame scaled_game(const ReducedGame& g, double alpha) {
    ReducedGame s = g;
    s.V = g.V * alpha;
    s.lambda0 = s.lambda_bar * (1.0 + s.xi * s.V);  // keep the V/lambda0 identity
    return s;
}
}  // namespace

double weighted_utility(const ReducedGame& g, WeightedRuleParams params,
                        const StrategyProfile& t, int i) {
    check_alpha(params.alpha);
    if (i < 0 || i >= g.n()) throw std::out_of_range("weighted_utility: index out of range");
    if (static_cast<int>(t.size()) != g.n())
        throw std::invalid_argument("weighted_utility: profile size must equal artist count");
    double total = std::accumulate(t.begin(), t.end(), 0.0);
    double contest = (g.d[i] + t[i]) / (1.0 + total) * g.V * params.alpha - t[i];
    double constant = (g.d[i] * params.alpha +
                       g.lambda0 / (g.m * g.lambda_bar) * g.uc_shares[i] * (1.0 - params.alpha)) /
                      g.xi;
    return contest + constant;
}

bool weighted_dominance_threshold(const ReducedGame& g, double alpha) {
    check_alpha(alpha);
    if (g.V <= 0.0) return true;
    return alpha * ((1.0 - g.d_min()) * g.V) <= 1.0;
}

AlphaBound max_alpha(const ReducedGame& g) {
    if (g.V <= 0.0 || (1.0 - g.d_min()) * g.V <= 1.0) return {1.0, true};
    return {1.0 / ((1.0 - g.d_min()) * g.V), false};
}

EquilibriumResult solve_weighted(const ReducedGame& g, double alpha) {
    check_alpha(alpha);
    EquilibriumResult r;
    if (weighted_dominance_threshold(g, alpha)) {
        r.regime = Regime::FraudFree;
        r.profile.assign(g.n(), 0.0);
        r.near_boundary = near_regime_boundary(scaled_game(g, alpha));
    } else {
        r = solve_closed_form(scaled_game(g, alpha));
    }
    r.utilities.resize(g.n());
    for (int i = 0; i < g.n(); ++i)
        r.utilities[i] = weighted_utility(g, {alpha}, r.profile, i);
    return r;
}

}  // namespace prorata
