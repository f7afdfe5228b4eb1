#ifndef PRORATA_TESTS_SUPPORT_HPP
#define PRORATA_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "prorata/model.hpp"

namespace prorata::testing {

// Two artists, two identical users, beta=0.7, delta=1.05, lambda0=300.
// Reduces to d=(0.3,0.7), xi=0.5, V=4.
inline Scenario scenario_a() {
    Scenario s;
    s.n = 2;
    s.m = 2;
    s.user_streams = {100.0, 100.0};
    s.stream_shares = {0.3, 0.3, 0.7, 0.7};
    s.beta = 0.7;
    s.delta = 1.05;
    s.lambda0 = 300.0;
    return s;
}

inline ReducedGame game_a() { return reduce(scenario_a()); }

// d=(0.05,0.15,0.8), V=2: partial fraud equilibrium with one honest artist.
inline ReducedGame game_b() {
    return ReducedGame::from_normalized({0.05, 0.15, 0.8}, 0.5, 2.0);
}

// Simplex sample of streamshares plus a fraud value in the requested regime.
struct GameSampler {
    std::mt19937_64 rng;

    explicit GameSampler(unsigned long long seed) : rng(seed) {}

    std::vector<double> simplex(int n) {
        std::exponential_distribution<double> exp(1.0);
        std::vector<double> d(n);
        double sum = 0.0;
        for (auto& x : d) {
            x = exp(rng) + 1e-4;  // keep shares (and the fairness radical) off zero
            sum += x;
        }
        for (auto& x : d) x /= sum;
        return d;
    }

    ReducedGame fraud_game(int n_min = 2, int n_max = 6, double v_cap = 20.0) {
        std::uniform_int_distribution<int> pick_n(n_min, n_max);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int n = pick_n(rng);
        auto d = simplex(n);
        double d_min = *std::min_element(d.begin(), d.end());
        double lo = 1.0 / (1.0 - d_min);
        double V = lo + (v_cap - lo) * std::max(unit(rng), 1e-6);
        double xi = 0.1 + 1.9 * unit(rng);
        return ReducedGame::from_normalized(std::move(d), xi, V);
    }

    ReducedGame fraud_free_game(int n_min = 2, int n_max = 6) {
        std::uniform_int_distribution<int> pick_n(n_min, n_max);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        int n = pick_n(rng);
        auto d = simplex(n);
        double d_min = *std::min_element(d.begin(), d.end());
        double hi = 1.0 / (1.0 - d_min);
        double V = hi * unit(rng);  // at or below the dominance threshold
        double xi = 0.1 + 1.9 * unit(rng);
        return ReducedGame::from_normalized(std::move(d), xi, V);
    }
};

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace prorata::testing

#endif
