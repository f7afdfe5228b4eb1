#include "prorata/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace prorata {

namespace {

constexpr int kBisectionCap = 200;

void require_fraud(const EquilibriumResult& eq, const char* who) {
    if (eq.regime != Regime::Fraud || !eq.cutoff)
        throw std::invalid_argument(std::string(who) + ": needs a fraud-regime equilibrium");
}

// Deviation audit of a profile in which every artist with d_i < d_hat plays
// exactly d_hat - d_i and everyone else qualifies outright. An unqualified
// honest deviation pays zero; fraud levels below the qualifying gap pay
// strictly less than zero, so checking t=0 and the qualified branch suffices.
void audit_profile(const ReducedGame& g, double d_hat, const StrategyProfile& profile,
                   PolicyAnalysis& out) {
    double total = std::accumulate(profile.begin(), profile.end(), 0.0);
    out.equilibrium_verified = true;
    for (int i = 0; i < g.n(); ++i) {
        double tau = total - profile[i];
        double held = utility(g, profile, i);

        // Gains from deviations that differ from the held strategy.
        std::vector<double> gains;
        double interior = best_response(g, i, tau);
        if (g.d[i] < d_hat) {
            gains.push_back(0.0 - held);  // drop out honestly, earn nothing
            double floor = d_hat - g.d[i];
            if (interior > floor) {
                StrategyProfile alt = profile;
                alt[i] = interior;
                gains.push_back(utility(g, alt, i) - held);
            }
        } else if (interior > 0.0) {
            StrategyProfile alt = profile;
            alt[i] = interior;
            gains.push_back(utility(g, alt, i) - held);
        }
        bool flagged = false;
        for (double gain : gains) {
            if (gain > 1e-9) out.equilibrium_verified = false;
            if (std::fabs(gain) <= 1e-9 && !flagged) {
                out.indifferent.push_back(i);
                flagged = true;
            }
        }
    }
}

}  // namespace

StrategyProfile just_qualify(const ReducedGame& g, double share_threshold) {
    if (share_threshold < 0.0)
        throw std::invalid_argument("just_qualify: threshold must be non-negative");
    StrategyProfile t(g.n());
    for (int i = 0; i < g.n(); ++i) t[i] = std::max(share_threshold - g.d[i], 0.0);
    return t;
}

double qualification_gap(const ReducedGame& g, const EquilibriumResult& eq, double theta) {
    require_fraud(eq, "qualification_gap");
    if (theta < 0.0) throw std::invalid_argument("qualification_gap: theta must be >= 0");
    double cutoff = *eq.cutoff;
    double ratio = 1.0 + eq.total_fraud;
    return (cutoff + theta) / (ratio + g.n() * theta) * g.V - cutoff - theta +
           (1.0 + 1.0 / g.xi) * g.d_min();
}

std::pair<double, double> threshold_validity_range(const ReducedGame& g,
                                                   const EquilibriumResult& eq) {
    require_fraud(eq, "threshold_validity_range");
    double cutoff = *eq.cutoff;
    double ratio = 1.0 + eq.total_fraud;
    int n = g.n();

    double theta_star = 0.0;
    if (ratio / (n * cutoff) >= g.V / (g.V - 1.0))
        theta_star = std::max((std::sqrt((ratio - n * cutoff) * g.V) - ratio) / n, 0.0);

    double upper = g.V + (1.0 + 1.0 / g.xi) * g.d_min();
    if (qualification_gap(g, eq, theta_star) < 0.0 || qualification_gap(g, eq, upper) >= 0.0)
        throw std::runtime_error("threshold_validity_range: gap bracket is invalid");

    double lo = theta_star, hi = upper;
    int iterations = 0;
    while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        if (++iterations > kBisectionCap)
            throw std::runtime_error("threshold_validity_range: bisection failed to converge");
        double mid = 0.5 * (lo + hi);
        (qualification_gap(g, eq, mid) >= 0.0 ? lo : hi) = mid;
    }
    return {theta_star, 0.5 * (lo + hi)};
}

PolicyAnalysis analyze(const ReducedGame& g, const EquilibriumResult& eq,
                       double share_threshold) {
    require_fraud(eq, "policy::analyze");
    if (share_threshold < 0.0)
        throw std::invalid_argument("policy::analyze: threshold must be non-negative");

    PolicyAnalysis out;
    out.share_threshold = share_threshold;
    auto [theta_star, theta_double_star] = threshold_validity_range(g, eq);
    out.theta_star = theta_star;
    out.theta_double_star = theta_double_star;
    out.u_baseline = eq.utilities;

    double cutoff = *eq.cutoff;
    if (share_threshold <= cutoff) {
        out.classification = ThresholdEffect::NoEffect;
        out.profile = eq.profile;  // the baseline equilibrium stands
        out.total_fraud = eq.total_fraud;
        out.u_policy = eq.utilities;
        out.welfare_delta.assign(g.n(), 0.0);
        audit_profile(g, share_threshold, out.profile, out);
        return out;
    }
    if (share_threshold <= cutoff + theta_double_star) {
        out.classification = ThresholdEffect::SlightlyHigh;
        out.profile = just_qualify(g, share_threshold);
        out.total_fraud = std::accumulate(out.profile.begin(), out.profile.end(), 0.0);
        out.u_policy.resize(g.n());
        out.welfare_delta.resize(g.n());
        for (int i = 0; i < g.n(); ++i) {
            out.u_policy[i] = utility(g, out.profile, i);
            out.welfare_delta[i] = out.u_policy[i] - eq.utilities[i];
        }
        audit_profile(g, share_threshold, out.profile, out);
        return out;
    }
    // Beyond the characterized range no profile is reported.
    out.classification = ThresholdEffect::Uncharacterized;
    return out;
}

double share_threshold_from_streams(const ReducedGame& g, double stream_threshold) {
    if (stream_threshold < 0.0)
        throw std::invalid_argument("share_threshold_from_streams: threshold must be >= 0");
    return stream_threshold / (g.m * g.lambda_bar);
}

}  // namespace prorata
