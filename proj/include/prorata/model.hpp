#ifndef PRORATA_MODEL_HPP
#define PRORATA_MODEL_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace prorata {

/// One failed Scenario invariant. `index` is -1 for scalar fields.
struct Violation {
    std::string field;
    int index = -1;
    double observed = 0.0;
    std::string message;
};

/// Raw platform data: users, per-user streams, per-user listening shares,
/// the revenue split and the fraud technology parameters.
struct Scenario {
    int n = 0;                          // artists, >= 2
    int m = 0;                          // users, >= 1
    std::vector<double> user_streams;   // lambda_j > 0, size m
    std::vector<double> stream_shares;  // pi_ij in [0,1], row-major n x m, columns sum to 1
    double beta = 0.0;                  // artist revenue share, in (0,1)
    double delta = 0.0;                 // unit fraud cost, > 1
    double lambda0 = 0.0;               // undetected fake streams per fake user, > 0

    double share(int artist, int user) const {
        return stream_shares[static_cast<std::size_t>(artist) * m + user];
    }
};

/// Thrown when an operation receives a scenario that fails validation.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// Normalized game. Strategy t_i is the ratio of artist i's fake streams to
/// total real streams; payoffs are (d_i+t_i)/(1+T) * V - t_i + d_i/xi.
struct ReducedGame {
    std::vector<double> d;          // real streamshares, sum to 1, each < 1
    double xi = 0.0;                // fraud premium (delta-beta)/beta, > 0
    double V = 0.0;                 // fraud value (lambda0-lambda_bar)/(xi*lambda_bar)
    double lambda_bar = 0.0;        // mean streams per user
    double lambda0 = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    int m = 0;
    std::vector<double> uc_shares;  // sum_j pi_ij per artist

    int n() const { return static_cast<int>(d.size()); }
    double d_min() const;
    double d_max() const;

    /// Builds a self-consistent game directly from normalized primitives
    /// (single synthetic user, lambda_bar = 1, lambda0 = 1 + xi*V).
    static ReducedGame from_normalized(std::vector<double> d, double xi, double V);
};

/// Fake-stream ratios per artist, all >= 0.
using StrategyProfile = std::vector<double>;

/// Diagnostic check of every Scenario invariant; empty result means valid.
std::vector<Violation> validate(const Scenario& s);

/// Rescales every stream-share column to sum to 1. Never applied implicitly.
Scenario renormalize_columns(Scenario s);

/// Reduction to the normalized game. Throws ScenarioError on invalid input.
ReducedGame reduce(const Scenario& s);

/// Normalized payoff of artist i at profile t.
double utility(const ReducedGame& g, const StrategyProfile& t, int i);

/// Monetary net gain of artist i under pro-rata given raw fraud purchases x.
double net_gain_prorata(const Scenario& s, const std::vector<double>& x, int i);

/// Monetary net gain of artist i under user-centric given raw fraud purchases x.
double net_gain_usercentric(const Scenario& s, const std::vector<double>& x, int i);

/// t_i = lambda0 * x_i / (m * lambda_bar) and its inverse. Exact by formula.
StrategyProfile ratios_from_fake_users(const ReducedGame& g, const std::vector<double>& x);
std::vector<double> fake_users_from_ratios(const ReducedGame& g, const StrategyProfile& t);

}  // namespace prorata

#endif
