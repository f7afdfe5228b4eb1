#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "prorata/io.hpp"
#include "support.hpp"

using namespace prorata;
using nlohmann::json;
using prorata::testing::scenario_a;

TEST_CASE("numbers survive the 12-digit emission format") {
    CHECK(io::format_number(5.0) == "5");
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::quantize(io::quantize(1.0 / 3.0)) == io::quantize(1.0 / 3.0));
    // quantize is idempotent on a spread of magnitudes
    for (double v : {1e-9, 0.3, 2.0 / 0.7, 171.42857142857142, 1e12}) {
        double q = io::quantize(v);
        CHECK(io::quantize(q) == q);
        CHECK(std::fabs(q - v) <= 1e-11 * std::fabs(v));
    }
}

TEST_CASE("scenario documents round-trip exactly") {
    auto s = scenario_a();
    auto j = io::scenario_to_json(s);
    auto back = io::scenario_from_json(j);
    CHECK(back.n == s.n);
    CHECK(back.m == s.m);
    CHECK(back.user_streams == s.user_streams);
    CHECK(back.stream_shares == s.stream_shares);
    CHECK(back.beta == s.beta);
    CHECK(back.delta == s.delta);
    CHECK(back.lambda0 == s.lambda0);
    // and the serialization itself is deterministic
    CHECK(io::scenario_to_json(back).dump() == j.dump());
}

TEST_CASE("scenario parsing rejects malformed documents") {
    auto j = io::scenario_to_json(scenario_a());
    auto missing = j;
    missing.erase("beta");
    CHECK_THROWS_AS(io::scenario_from_json(missing), std::invalid_argument);

    auto ragged = j;
    ragged["stream_shares"][0] = json::array({0.3});
    CHECK_THROWS_AS(io::scenario_from_json(ragged), std::invalid_argument);

    auto text = j;
    text["lambda0"] = "lots";
    CHECK_THROWS_AS(io::scenario_from_json(text), std::invalid_argument);
}

TEST_CASE("game input accepts raw scenarios and pre-reduced games") {
    auto in = io::game_from_json(io::scenario_to_json(scenario_a()));
    REQUIRE(in.scenario.has_value());
    CHECK(in.game.V == doctest::Approx(4.0));
    CHECK(in.game.d[0] == doctest::Approx(0.3));

    json reduced = {{"d", {0.3, 0.7}}, {"xi", 0.5}, {"V", 4.0}};
    auto pre = io::game_from_json(reduced);
    CHECK_FALSE(pre.scenario.has_value());
    CHECK(pre.game.xi == 0.5);
    CHECK(pre.game.m == 1);
    CHECK(pre.game.lambda0 == doctest::Approx(3.0));  // 1 + xi*V

    reduced["lambda_bar"] = 100.0;
    auto scaled = io::game_from_json(reduced);
    CHECK(scaled.game.lambda0 == doctest::Approx(300.0));

    reduced["lambda0"] = 250.0;  // contradicts lambda_bar*(1 + xi*V)
    CHECK_THROWS_AS(io::game_from_json(reduced), std::invalid_argument);

    json bad_uc = {{"d", {0.3, 0.7}}, {"xi", 0.5}, {"V", 4.0}, {"uc_shares", {1.0}}};
    CHECK_THROWS_AS(io::game_from_json(bad_uc), std::invalid_argument);
}

TEST_CASE("equilibrium report shape") {
    auto g = testing::game_a();
    auto eq = solve_closed_form(g);
    auto j = io::equilibrium_to_json(eq);
    CHECK(j["regime"] == "Fraud");
    CHECK(j["T_star"] == 1.0);
    CHECK(j["d_star"] == 1.0);
    CHECK(j["n_d"] == 2);
    CHECK(j["t_star"][0] == 0.7);
    CHECK(j["utilities"][1] == 3.1);
    CHECK(j["worst_case"] == true);
    CHECK(j["bounds"]["lower"] == 2.0);

    EquilibriumResult calm;
    calm.regime = Regime::FraudFree;
    calm.profile = {0.0, 0.0};
    calm.utilities = {1.0, 2.0};
    auto jc = io::equilibrium_to_json(calm);
    CHECK(jc["d_star"].is_null());
    CHECK(jc["regime"] == "FraudFree");
}

TEST_CASE("policy report omits profiles outside the characterized range") {
    auto g = testing::game_a();
    auto eq = solve_closed_form(g);
    auto in_range = io::policy_to_json(analyze(g, eq, 1.5));
    CHECK(in_range["classification"] == "SlightlyHigh");
    CHECK(in_range["t_hat"][0] == 1.2);
    CHECK(in_range["u_hat"][1] == 2.6);

    auto out_of_range = io::policy_to_json(analyze(g, eq, 3.0));
    CHECK(out_of_range["classification"] == "Uncharacterized");
    CHECK_FALSE(out_of_range.contains("t_hat"));
    CHECK(out_of_range["theta_double_star"] == 1.9);
}

TEST_CASE("csv bodies have stable headers and LF endings") {
    auto g = testing::game_a();
    auto eq = solve_closed_form(g);
    auto csv = io::artists_csv(g, eq);
    CHECK(csv.substr(0, csv.find('\n')) == "index,d,t_star,utility");
    CHECK(csv.find("0,0.3,0.7,1.9\n") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);

    auto fair = compare(g, eq);
    auto fcsv = io::fairness_csv(fair);
    CHECK(fcsv.substr(0, fcsv.find('\n')) == "artist,u_zero,u_star,delta");

    auto pcsv = io::policy_csv(analyze(g, eq, 1.5));
    CHECK(pcsv.substr(0, pcsv.find('\n')) == "artist,u_star,u_hat,delta");
    CHECK(pcsv.find("0,1.9,1.4,-0.5\n") != std::string::npos);
}
