#ifndef PRORATA_EQUILIBRIUM_HPP
#define PRORATA_EQUILIBRIUM_HPP

#include <optional>
#include <utility>
#include <vector>

#include "prorata/model.hpp"

namespace prorata {

enum class Regime { FraudFree, Fraud };

struct EquilibriumResult {
    Regime regime = Regime::FraudFree;
    double total_fraud = 0.0;               // T*, aggregate fake-stream ratio
    std::optional<double> cutoff;           // d*, absent when fraud-free
    std::vector<int> dishonest;             // N^d, ascending artist indices
    StrategyProfile profile;                // t*
    std::vector<double> utilities;          // payoffs at t*
    bool worst_case = false;                // every artist cheats
    std::pair<double, double> ratio_bounds{1.0, 1.0};  // bracket for 1+T*
    bool near_boundary = false;             // |V - 1/(1-d_min)| < 1e-9 diagnostic

    int n_dishonest() const { return static_cast<int>(dishonest.size()); }
};

/// Fraud-value level below which honesty is strictly dominant for an artist
/// with the given streamshare: 1/(1-d) up to d = 1/2, then 4d.
double honesty_threshold(double streamshare);

/// True when staying honest is a strictly dominant strategy for artist i.
bool honesty_dominant(const ReducedGame& g, int i);

/// Weak-technology test: fraud-free iff lambda0 <= lambda_bar*(1 + xi/(1-d_min)).
Regime classify(const ReducedGame& g);

/// Diagnostic: the game sits within 1e-9 of the regime threshold.
bool near_regime_boundary(const ReducedGame& g);

/// Payoff-maximizing fraud level of artist i against opponents' aggregate tau.
double best_response(const ReducedGame& g, int i, double tau);

/// Equilibrium via candidate-prefix enumeration of the dishonest set.
/// Requires the Fraud regime.
EquilibriumResult solve_closed_form(const ReducedGame& g);

/// Equilibrium via bisection of the aggregate fixed-point equation.
/// Requires the Fraud regime; matches solve_closed_form to 1e-9.
EquilibriumResult solve_fixed_point(const ReducedGame& g);

/// Classifies and solves; fraud-free games get the zero profile.
EquilibriumResult solve(const ReducedGame& g);

/// (lower, upper) bracket for 1+T* given the dishonest-set size.
std::pair<double, double> bounds_envelope(int n_dishonest, double V);

/// True iff every artist cheats in the fraud equilibrium: d_max < (n-1)V/n^2.
bool is_worst_case(const ReducedGame& g);

}  // namespace prorata

#endif
