#ifndef PRORATA_FAIRNESS_HPP
#define PRORATA_FAIRNESS_HPP

#include <vector>

#include "prorata/equilibrium.hpp"
#include "prorata/model.hpp"

namespace prorata {

/// Egalitarian comparison of the fraud equilibrium against the honest profile.
struct FairnessReport {
    std::vector<double> u_star;   // utilities at the fraud equilibrium
    std::vector<double> u_zero;   // fraud-free utilities d_i*(1/xi + V)
    double min_star = 0.0;
    double min_zero = 0.0;
    bool fairer = false;          // min_star > min_zero, strict
    double condition_rhs = 0.0;   // V - sqrt(d_min*V*(V-1)); fairer iff 1+T* below it
    bool condition_holds = false;
    bool knife_edge = false;      // |min_star - min_zero| < 1e-9 diagnostic
};

/// Utilities when nobody cheats: u_i = d_i*(1/xi + V).
std::vector<double> fraud_free_profile(const ReducedGame& g);

/// Min-utility comparison, cross-checked against the closed-form condition.
FairnessReport compare(const ReducedGame& g, const EquilibriumResult& eq);

/// Closed-form test for the all-cheat equilibrium: fairer iff d_min < V/(n^2 (V-1)).
bool worst_case_fairer(int n, double d_min, double V);

}  // namespace prorata

#endif
