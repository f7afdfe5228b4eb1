#include "prorata/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prorata {

std::vector<double> fraud_free_profile(const ReducedGame& g) {
    std::vector<double> u(g.n());
    for (int i = 0; i < g.n(); ++i) u[i] = g.d[i] * (1.0 / g.xi + g.V);
    return u;
}

FairnessReport compare(const ReducedGame& g, const EquilibriumResult& eq) {
    if (eq.regime != Regime::Fraud)
        throw std::invalid_argument("fairness::compare: needs a fraud-regime equilibrium");
    if (g.V < 1.0)
        throw std::invalid_argument("fairness::compare: condition undefined for V < 1");

    FairnessReport r;
    r.u_star = eq.utilities;
    r.u_zero = fraud_free_profile(g);
    r.min_star = *std::min_element(r.u_star.begin(), r.u_star.end());
    r.min_zero = *std::min_element(r.u_zero.begin(), r.u_zero.end());
    r.fairer = r.min_star > r.min_zero;
    r.condition_rhs = g.V - std::sqrt(g.d_min() * g.V * (g.V - 1.0));
    r.condition_holds = 1.0 + eq.total_fraud < r.condition_rhs;
    r.knife_edge = std::fabs(r.min_star - r.min_zero) < 1e-9;
    return r;
}

bool worst_case_fairer(int n, double d_min, double V) {
    if (!(V > 1.0)) throw std::invalid_argument("worst_case_fairer: needs V > 1");
    return d_min < V / (static_cast<double>(n) * n * (V - 1.0));
}

}  // namespace prorata
