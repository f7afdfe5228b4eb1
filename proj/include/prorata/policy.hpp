#ifndef PRORATA_POLICY_HPP
#define PRORATA_POLICY_HPP

#include <utility>
#include <vector>

#include "prorata/equilibrium.hpp"
#include "prorata/model.hpp"

namespace prorata {

enum class ThresholdEffect {
    NoEffect,         // threshold at or below the cutoff; baseline equilibrium stands
    SlightlyHigh,     // just-qualify equilibrium; everyone worse off
    Uncharacterized,  // beyond the validity range; no profile is claimed
};

struct PolicyAnalysis {
    double share_threshold = 0.0;  // d-hat
    ThresholdEffect classification = ThresholdEffect::NoEffect;
    StrategyProfile profile;            // equilibrium profile (empty if uncharacterized)
    double total_fraud = 0.0;
    double theta_star = 0.0;            // start of the decreasing branch of the gap
    double theta_double_star = 0.0;     // validity-range width above the cutoff
    std::vector<double> u_policy;       // utilities under the policy profile
    std::vector<double> u_baseline;     // utilities at the baseline equilibrium
    std::vector<double> welfare_delta;  // u_policy - u_baseline
    bool equilibrium_verified = false;  // deviation checks for just-qualify profile
    std::vector<int> indifferent;       // artists within 1e-9 of a profitable deviation
};

/// Profile where every short artist cheats exactly up to the threshold.
StrategyProfile just_qualify(const ReducedGame& g, double share_threshold);

/// Pivotal artist's just-qualify payoff margin at threshold excess theta:
/// (d*+theta)/(1+T*+n*theta)*V - d* - theta + (1+1/xi)*d_min.
double qualification_gap(const ReducedGame& g, const EquilibriumResult& eq, double theta);

/// (theta*, theta**): the gap peaks at theta* and crosses zero at theta**.
std::pair<double, double> threshold_validity_range(const ReducedGame& g,
                                                   const EquilibriumResult& eq);

/// Classifies a qualification threshold and, in the slightly-high range,
/// constructs and verifies the just-qualify equilibrium with welfare deltas.
PolicyAnalysis analyze(const ReducedGame& g, const EquilibriumResult& eq,
                       double share_threshold);

/// Converts a raw stream threshold to the streamshare form d-hat = lambda-hat/(m*lambda_bar).
double share_threshold_from_streams(const ReducedGame& g, double stream_threshold);

}  // namespace prorata

#endif
