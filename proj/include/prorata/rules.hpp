#ifndef PRORATA_RULES_HPP
#define PRORATA_RULES_HPP

#include "prorata/equilibrium.hpp"
#include "prorata/model.hpp"

namespace prorata {

/// Blend weight of the convex combination alpha*pro-rata + (1-alpha)*user-centric.
struct WeightedRuleParams {
    double alpha = 1.0;  // in (0,1]; 1 is pure pro-rata
};

struct AlphaBound {
    double value = 1.0;
    bool already_fraud_free = false;  // weak technology, any alpha works
};

/// Payoff under the weighted rule. The strategic part is the pro-rata game
/// with fraud value V*alpha; the user-centric part is a constant.
double weighted_utility(const ReducedGame& g, WeightedRuleParams params,
                        const StrategyProfile& t, int i);

/// True iff honesty is strictly dominant for all artists under weight alpha:
/// V*alpha <= 1/(1-d_min).
bool weighted_dominance_threshold(const ReducedGame& g, double alpha);

/// Largest blend weight that still guarantees a fraud-free equilibrium,
/// 1/((1-d_min)V) under strong technology and 1 otherwise.
AlphaBound max_alpha(const ReducedGame& g);

/// Equilibrium under the weighted rule; strategically the base game at V*alpha,
/// with utilities reported under the weighted payoff.
EquilibriumResult solve_weighted(const ReducedGame& g, double alpha);

}  // namespace prorata

#endif
