#include "prorata/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prorata::oracle {

namespace {

double payoff(const ReducedGame& g, int i, double own, double tau) {
    return (g.d[i] + own) / (1.0 + own + tau) * g.V - own + g.d[i] / g.xi;
}

// Stationary point of the concave payoff, clamped at zero. Kept local so the
// oracle shares no code with the equilibrium module.
double stationary_response(const ReducedGame& g, int i, double tau) {
    if (g.V <= 0.0) return 0.0;
    return std::max(0.0, std::sqrt((1.0 - g.d[i] + tau) * g.V) - (1.0 + tau));
}

void check_config(const OracleConfig& cfg) {
    if (cfg.grid_points < 3) throw std::invalid_argument("oracle: grid_points must be >= 3");
    if (cfg.convergence_tol <= 0.0)
        throw std::invalid_argument("oracle: convergence tolerance must be positive");
}

}  // namespace

double DeviationReport::worst_gain() const {
    double worst = 0.0;
    for (double v : max_gain) worst = std::max(worst, v);
    return worst;
}

StrategyProfile br_iterate(const ReducedGame& g, StrategyProfile start,
                           const OracleConfig& cfg) {
    check_config(cfg);
    if (static_cast<int>(start.size()) != g.n())
        throw std::invalid_argument("br_iterate: start size must equal artist count");
    double cap = std::max(g.V / 2.0, 0.0);
    for (double v : start)
        if (v < 0.0 || v > cap)
            throw std::invalid_argument("br_iterate: start must lie in [0, V/2]^n");

    StrategyProfile t = std::move(start);
    double total = std::accumulate(t.begin(), t.end(), 0.0);
    for (int sweep = 0; sweep < cfg.max_iterations; ++sweep) {
        double worst = 0.0;
        for (int i = 0; i < g.n(); ++i) {
            double tau = total - t[i];
            double next = stationary_response(g, i, tau);
            worst = std::max(worst, std::fabs(next - t[i]));
            total += next - t[i];
            t[i] = next;
        }
        if (worst < cfg.convergence_tol) return t;
    }
    throw std::runtime_error("br_iterate: no fixed point within the iteration cap");
}

double grid_best_response(const ReducedGame& g, int i, double tau, const OracleConfig& cfg) {
    check_config(cfg);
    if (i < 0 || i >= g.n()) throw std::out_of_range("grid_best_response: index out of range");
    if (g.V <= 0.0) return 0.0;

    double cap = g.V / 2.0;
    double lo = 0.0, hi = cap;
    double best = 0.0, best_value = payoff(g, i, 0.0, tau);
    double coarse_step = cap / (cfg.grid_points - 1);
    for (int round = 0; round <= cfg.refinement_rounds; ++round) {
        double step = (hi - lo) / (cfg.grid_points - 1);
        for (int k = 0; k < cfg.grid_points; ++k) {
            double t = lo + step * k;
            double value = payoff(g, i, t, tau);
            if (value > best_value) {
                best_value = value;
                best = t;
            }
        }
        // Re-grid a two-cell window around the incumbent.
        lo = std::max(0.0, best - 2.0 * step);
        hi = std::min(cap, best + 2.0 * step);
    }

    // Value comparisons alone localize a flat maximum to about sqrt(eps).
    // Polish interior argmaxes by bisecting on the secant slope instead,
    // bracketed by the coarse grid cell so the true argmax is inside.
    double h = 1e-6 * (1.0 + tau + best);
    double a = best - 2.0 * coarse_step, b = std::min(cap, best + 2.0 * coarse_step);
    auto slope = [&](double t) { return payoff(g, i, t + h, tau) - payoff(g, i, t - h, tau); };
    if (a >= h && slope(a) > 0.0 && slope(b) < 0.0) {
        for (int it = 0; it < 80 && b - a > 1e-13 * (1.0 + b); ++it) {
            double mid = 0.5 * (a + b);
            (slope(mid) > 0.0 ? a : b) = mid;
        }
        best = 0.5 * (a + b);
    }
    return best;
}

DeviationReport verify_equilibrium(const ReducedGame& g, const StrategyProfile& t,
                                   const OracleConfig& cfg) {
    check_config(cfg);
    if (static_cast<int>(t.size()) != g.n())
        throw std::invalid_argument("verify_equilibrium: profile size must equal artist count");
    for (double v : t)
        if (v < 0.0) throw std::invalid_argument("verify_equilibrium: profile must be >= 0");

    double total = std::accumulate(t.begin(), t.end(), 0.0);
    DeviationReport report;
    report.max_gain.resize(g.n());
    for (int i = 0; i < g.n(); ++i) {
        double tau = total - t[i];
        double held = payoff(g, i, t[i], tau);
        double challenger = grid_best_response(g, i, tau, cfg);
        report.max_gain[i] = std::max(0.0, payoff(g, i, challenger, tau) - held);
    }
    return report;
}

}  // namespace prorata::oracle
