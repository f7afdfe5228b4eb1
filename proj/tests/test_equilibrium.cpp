#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "prorata/equilibrium.hpp"
#include "prorata/oracle.hpp"
#include "support.hpp"

using namespace prorata;
using prorata::testing::game_a;
using prorata::testing::game_b;

TEST_CASE("honesty threshold: both branches and the breakpoint") {
    CHECK(honesty_threshold(0.0) == doctest::Approx(1.0));
    CHECK(honesty_threshold(0.5) == doctest::Approx(2.0));
    CHECK(honesty_threshold(0.75) == doctest::Approx(3.0));
    CHECK(honesty_threshold(std::nextafter(0.5, 1.0)) == doctest::Approx(2.0));
    CHECK_THROWS_AS(honesty_threshold(1.0), std::domain_error);
    CHECK_THROWS_AS(honesty_threshold(-0.1), std::domain_error);
}

TEST_CASE("honesty dominance per artist") {
    auto g = game_a();
    CHECK_FALSE(honesty_dominant(g, 0));  // h(0.3) ~ 1.43 < 4

    auto calm = ReducedGame::from_normalized({0.3, 0.7}, 0.5, 0.0);
    CHECK(honesty_dominant(calm, 0));
    CHECK(honesty_dominant(calm, 1));

    // boundary included: V = h(0.75) = 3
    auto edge = ReducedGame::from_normalized({0.25, 0.75}, 0.5, 3.0);
    CHECK(honesty_dominant(edge, 1));
    CHECK_FALSE(honesty_dominant(edge, 0));
}

TEST_CASE("dominance soundness: grid search finds no profitable deviation") {
    testing::GameSampler sampler(7101);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = sampler.fraud_game();
        for (int i = 0; i < g.n(); ++i) {
            if (!honesty_dominant(g, i)) continue;
            for (int a = 0; a <= 12; ++a) {
                double tau = 3.0 * g.V * a / 12.0;
                for (int b = 1; b <= 40; ++b) {
                    double t = g.V / 2.0 * b / 40.0;
                    StrategyProfile profile(g.n(), 0.0);
                    profile[i] = t;
                    double with = (g.d[i] + t) / (1.0 + t + tau) * g.V - t;
                    double without = g.d[i] / (1.0 + tau) * g.V;
                    CHECK(with <= without + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("regime classification") {
    CHECK(classify(game_a()) == Regime::Fraud);
    CHECK(classify(ReducedGame::from_normalized({0.5, 0.5}, 0.5, 2.0)) ==
          Regime::FraudFree);  // boundary is fraud-free
    CHECK(classify(ReducedGame::from_normalized({0.2, 0.8}, 0.5, 1.0)) == Regime::FraudFree);
    CHECK(classify(ReducedGame::from_normalized({0.2, 0.8}, 0.5, -0.5)) == Regime::FraudFree);
}

TEST_CASE("best response: interior, corner and degenerate cases") {
    auto g = game_a();
    CHECK(best_response(g, 0, 0.3) == doctest::Approx(0.7).epsilon(1e-12));
    // corner: (1-d+tau)V <= (1+tau)^2
    CHECK(best_response(g, 1, 8.0) == doctest::Approx(0.0));
    auto calm = ReducedGame::from_normalized({0.3, 0.7}, 0.5, -0.2);
    CHECK(best_response(calm, 0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("best response matches dense grid argmax") {
    testing::GameSampler sampler(99);
    oracle::OracleConfig cfg;
    cfg.grid_points = 4001;
    for (int trial = 0; trial < 10; ++trial) {
        auto g = sampler.fraud_game();
        for (double tau : {0.0, 0.3, 1.7}) {
            double analytic = best_response(g, 0, tau);
            double grid = oracle::grid_best_response(g, 0, tau, cfg);
            CHECK(testing::close(analytic, grid, 1e-8));
        }
    }
}

TEST_CASE("closed form solves the worked two-artist game") {
    auto eq = solve_closed_form(game_a());
    CHECK(eq.regime == Regime::Fraud);
    CHECK(eq.total_fraud == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*eq.cutoff == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eq.profile[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(eq.profile[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(eq.utilities[0] == doctest::Approx(1.9).epsilon(1e-12));
    CHECK(eq.utilities[1] == doctest::Approx(3.1).epsilon(1e-12));
    CHECK(eq.worst_case);
    CHECK(eq.n_dishonest() == 2);
}

TEST_CASE("closed form solves the partial-fraud three-artist game") {
    auto eq = solve_closed_form(game_b());
    CHECK(eq.n_dishonest() == 2);
    double ratio = std::sqrt(1.05) + 0.5;
    CHECK(1.0 + eq.total_fraud == doctest::Approx(ratio).epsilon(1e-12));
    CHECK(*eq.cutoff == doctest::Approx((0.2 + ratio - 1.0) / 2.0).epsilon(1e-12));
    CHECK(eq.profile[0] == doctest::Approx(*eq.cutoff - 0.05).epsilon(1e-12));
    CHECK(eq.profile[1] == doctest::Approx(*eq.cutoff - 0.15).epsilon(1e-12));
    CHECK(eq.profile[2] == doctest::Approx(0.0));
    CHECK(0.8 >= *eq.cutoff);
    CHECK_FALSE(eq.worst_case);
}

TEST_CASE("closed form solves an all-cheat three-artist game") {
    auto g = ReducedGame::from_normalized({0.1, 0.3, 0.6}, 0.5, 3.0);
    auto eq = solve_closed_form(g);
    CHECK(eq.n_dishonest() == 3);
    CHECK(eq.total_fraud == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(*eq.cutoff == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(eq.profile[0] == doctest::Approx(17.0 / 30.0).epsilon(1e-12));
    CHECK(eq.profile[1] == doctest::Approx(11.0 / 30.0).epsilon(1e-12));
    CHECK(eq.profile[2] == doctest::Approx(1.0 / 15.0).epsilon(1e-12));
}

TEST_CASE("closed form refuses fraud-free games") {
    CHECK_THROWS_AS(solve_closed_form(ReducedGame::from_normalized({0.5, 0.5}, 0.5, 2.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_closed_form(ReducedGame::from_normalized({0.4, 0.6}, 0.5, 0.8)),
                    std::invalid_argument);
}

TEST_CASE("fixed point agrees with the closed form") {
    for (const auto& g : {game_a(), game_b()}) {
        auto a = solve_closed_form(g);
        auto b = solve_fixed_point(g);
        CHECK(testing::close(a.total_fraud, b.total_fraud, 1e-9));
        CHECK(testing::close(*a.cutoff, *b.cutoff, 1e-9));
        REQUIRE(a.dishonest == b.dishonest);
        for (int i = 0; i < g.n(); ++i) CHECK(testing::close(a.profile[i], b.profile[i], 1e-9));
    }
}

TEST_CASE("aggregate residual at the top of the bracket is 1/V - 1") {
    // F(V-1) = 1/V: every d_i exceeds the cutoff there, so the sum telescopes.
    auto g = game_a();
    double ratio = g.V;  // 1 + (V-1)
    double cutoff = ratio - ratio * ratio / g.V;
    CHECK(cutoff == doctest::Approx(0.0));
    double sum = 0.0;
    for (double d : g.d) sum += std::max(d, cutoff) / ratio;
    CHECK(sum == doctest::Approx(1.0 / g.V));
}

TEST_CASE("bounds envelope") {
    auto [lo1, hi1] = bounds_envelope(1, 4.0);
    CHECK(lo1 == doctest::Approx(0.0));
    CHECK(hi1 == doctest::Approx(2.0));
    auto [lo2, hi2] = bounds_envelope(2, 4.0);
    CHECK(lo2 == doctest::Approx(2.0));
    CHECK(hi2 == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-12));

    double prev_lo = 0.0, prev_hi = 0.0;
    for (int s = 1; s <= 2000; ++s) {
        auto [lo, hi] = bounds_envelope(s, 4.0);
        if (s > 1) {
            CHECK(lo > prev_lo);
            CHECK(hi > prev_hi);
        }
        CHECK(hi <= 4.0 + 1e-12);
        prev_lo = lo;
        prev_hi = hi;
    }
    CHECK(prev_lo == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(prev_hi == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("worst-case condition agrees with the solved dishonest set") {
    CHECK(is_worst_case(game_a()));
    CHECK_FALSE(is_worst_case(game_b()));

    testing::GameSampler sampler(424242);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = sampler.fraud_game();
        auto eq = solve_closed_form(g);
        CHECK(is_worst_case(g) == (eq.n_dishonest() == g.n()));
    }
}

TEST_CASE("equalization, FOC residuals and bounds on random games") {
    testing::GameSampler sampler(5150);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = sampler.fraud_game();
        auto eq = solve_closed_form(g);
        double ratio = 1.0 + eq.total_fraud;

        CHECK(ratio <= g.V + 1e-9);
        CHECK(eq.total_fraud >= -1e-12);
        CHECK(eq.total_fraud <= g.V - 1.0 + 1e-9);
        CHECK(ratio >= eq.ratio_bounds.first - 1e-9);
        CHECK(ratio <= eq.ratio_bounds.second + 1e-9);

        for (int i : eq.dishonest) {
            CHECK(testing::close(g.d[i] + eq.profile[i], *eq.cutoff, 1e-9));
            double tau = eq.total_fraud - eq.profile[i];
            double residual = (1.0 - g.d[i] + tau) * g.V / (ratio * ratio) - 1.0;
            CHECK(std::fabs(residual) <= 1e-8);
        }
        for (int i = 0; i < g.n(); ++i) {
            if (std::find(eq.dishonest.begin(), eq.dishonest.end(), i) != eq.dishonest.end())
                continue;
            double residual = (1.0 - g.d[i] + eq.total_fraud) * g.V / (ratio * ratio) - 1.0;
            CHECK(residual <= 1e-12);
        }

        // monotone set structure: cheaters are exactly those below the cutoff
        for (int i : eq.dishonest)
            for (int j = 0; j < g.n(); ++j)
                if (g.d[j] < g.d[i])
                    CHECK(std::find(eq.dishonest.begin(), eq.dishonest.end(), j) !=
                          eq.dishonest.end());

        auto fp = solve_fixed_point(g);
        for (int i = 0; i < g.n(); ++i)
            CHECK(testing::close(fp.profile[i], eq.profile[i], 1e-9));
    }
}

TEST_CASE("equilibrium is independent of tie order") {
    auto g1 = ReducedGame::from_normalized({0.2, 0.2, 0.6}, 0.5, 4.0);
    auto eq1 = solve_closed_form(g1);
    CHECK(eq1.profile[0] == doctest::Approx(eq1.profile[1]).epsilon(1e-12));
    CHECK(utility(g1, eq1.profile, 0) == doctest::Approx(utility(g1, eq1.profile, 1)));
}

TEST_CASE("payoffs are strictly decreasing beyond V/2") {
    testing::GameSampler sampler(31337);
    for (int trial = 0; trial < 25; ++trial) {
        auto g = sampler.fraud_game();
        for (int a = 0; a < 8; ++a) {
            double tau = 3.0 * g.V * a / 7.0;
            double prev = (g.d[0] + g.V / 2.0) / (1.0 + g.V / 2.0 + tau) * g.V - g.V / 2.0;
            for (int k = 1; k <= 30; ++k) {
                double t = g.V / 2.0 + g.V * k / 30.0;
                double value = (g.d[0] + t) / (1.0 + t + tau) * g.V - t;
                CHECK(value < prev);
                prev = value;
            }
        }
    }
}
