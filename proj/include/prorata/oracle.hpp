#ifndef PRORATA_ORACLE_HPP
#define PRORATA_ORACLE_HPP

#include <vector>

#include "prorata/model.hpp"

namespace prorata::oracle {

// Independent verification engine. Depends only on the model payoffs and
// never calls the closed-form solver, so agreement between the two is a
// genuine cross-check rather than a tautology.

struct OracleConfig {
    int grid_points = 20001;        // resolution per axis over [0, V/2]
    int max_iterations = 10000;     // best-response sweep cap
    double convergence_tol = 1e-10; // per-component fixed-point tolerance
    int refinement_rounds = 3;      // local re-grid passes around the argmax
};

struct DeviationReport {
    std::vector<double> max_gain;  // best grid improvement found per artist
    double worst_gain() const;
    bool passes(double tol = 1e-8) const { return worst_gain() <= tol; }
};

/// Cyclic best-response iteration from the given start until the largest
/// per-sweep change drops below the tolerance. Throws on non-convergence.
StrategyProfile br_iterate(const ReducedGame& g, StrategyProfile start,
                           const OracleConfig& cfg = {});

/// Grid argmax of artist i's payoff over [0, V/2] with local refinement.
double grid_best_response(const ReducedGame& g, int i, double tau,
                          const OracleConfig& cfg = {});

/// Checks that no grid deviation improves any artist's payoff at profile t.
DeviationReport verify_equilibrium(const ReducedGame& g, const StrategyProfile& t,
                                   const OracleConfig& cfg = {});

}  // namespace prorata::oracle

#endif
