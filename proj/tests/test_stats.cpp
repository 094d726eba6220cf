#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "seclab/stats.hpp"

using namespace seclab;
using seclab::testing::spec;

TEST_CASE("required_trials evaluates the planning formula") {
    // ceil(ln(2/delta) / (2 eps^2))
    CHECK(required_trials(0.05, 0.01) == 1060);
    CHECK(required_trials(0.02, 0.01) == 6623);
    CHECK(required_trials(0.5, 0.5) == 3);
    // the returned n actually meets the target half-width, and one fewer does not
    CHECK(hoeffding_epsilon(6623, 0.01) <= 0.02);
    CHECK(hoeffding_epsilon(6622, 0.01) > 0.02);
    CHECK_THROWS_AS(required_trials(0.0, 0.5), Error);
    CHECK_THROWS_AS(required_trials(0.5, 1.5), Error);
}

TEST_CASE("required_trials is nonincreasing in epsilon and delta") {
    const double eps_grid[] = {0.01, 0.02, 0.05, 0.1, 0.3, 0.7};
    const double delta_grid[] = {0.001, 0.01, 0.05, 0.2, 0.5, 0.9};
    for (double d : delta_grid) {
        uint64_t prev = UINT64_MAX;
        for (double e : eps_grid) {
            uint64_t n = required_trials(e, d);
            CHECK(n <= prev);
            prev = n;
        }
    }
    for (double e : eps_grid) {
        uint64_t prev = UINT64_MAX;
        for (double d : delta_grid) {
            uint64_t n = required_trials(e, d);
            CHECK(n <= prev);
            prev = n;
        }
    }
}

TEST_CASE("coinflip estimate sits on zero") {
    GameSpec s = spec("identity", "coinflip", AttackModel::Cpa);
    AdvantageEstimate est = estimate_advantage(s, GameKind::Ind, 10000, 0.01, 8);
    CHECK(std::fabs(est.adv_hat) <= 0.05);
    CHECK(est.n == 10000);
}

TEST_CASE("replay on identity estimates to exactly 1") {
    GameSpec s = spec("identity", "replay", AttackModel::Cpa);
    AdvantageEstimate est = estimate_advantage(s, GameKind::Ind, 1000, 0.01, 12);
    CHECK(est.adv_hat == 1.0);
    CHECK(est.p1_hat == 1.0);
    CHECK(est.p0_hat == 0.0);
    // interval clamps to the advantage range
    CHECK(est.interval_hi == 1.0);
    CHECK(est.interval_lo == doctest::Approx(1.0 - 2 * est.epsilon));
}

TEST_CASE("lsb extractor estimate lands near its exact advantage") {
    GameSpec s = spec("leaky_lsb", "lsb_extractor", AttackModel::Cpa);
    AdvantageEstimate est = estimate_advantage(s, GameKind::Css, 20000, 0.01, 21);
    CHECK(std::fabs(est.adv_hat - 0.5) <= 0.03);
}

TEST_CASE("estimates are pure functions of (spec, n, delta, master seed)") {
    GameSpec s = spec("xor_malleable", "bitflip", AttackModel::Cca2);
    AdvantageEstimate a = estimate_advantage(s, GameKind::Ind, 500, 0.05, 99);
    AdvantageEstimate b = estimate_advantage(s, GameKind::Ind, 500, 0.05, 99);
    CHECK(a.count1 == b.count1);
    CHECK(a.count0 == b.count0);
    CHECK(a.adv_hat == b.adv_hat);
    CHECK(a.transcript_digest == b.transcript_digest);
    AdvantageEstimate c = estimate_advantage(s, GameKind::Ind, 500, 0.05, 100);
    CHECK(a.transcript_digest != c.transcript_digest);
}

TEST_CASE("the two arms draw from disjoint seed streams") {
    for (uint64_t master : {0ULL, 1ULL, 0xABCDEFULL}) {
        for (uint64_t i = 0; i < 64; ++i) {
            CHECK(derive_trial_seed(master, 0, i) != derive_trial_seed(master, 1, i));
        }
    }
}

TEST_CASE("a failing trial aborts the estimate with a witness") {
    GameSpec s = spec("identity", "replay", AttackModel::Cpa);
    IndAdversary bad = s.ind();
    bad.phase1 = [](const BitString&, OracleHandle&, CoinTape&) {
        return IndPhase1Result{BitString::from_uint(0, 4), BitString::from_uint(0, 5), StateInfo{}};
    };
    s.adversary = bad;
    CHECK_THROWS_WITH_AS(estimate_advantage(s, GameKind::Ind, 10, 0.1, 7),
                         doctest::Contains("seed="), InvalidAdversaryOutput);
}

TEST_CASE("exact advantage composes the two enumerated arms") {
    GameSpec s = spec("leaky_lsb", "lsb_extractor", AttackModel::Cpa);
    ExactAdvantage adv = exact_advantage(s, GameKind::Css);
    CHECK(adv.p1() == Rational(1, 1));
    CHECK(adv.p0() == Rational(1, 2));
    CHECK(adv.advantage == Rational(1, 2));
    CHECK(adv.arm1.ones == adv.arm1.tapes);
}

TEST_CASE("negligibility sweep reports the finite table") {
    SUBCASE("replay on identity shows no decay") {
        auto family = [](int k) { return spec("identity", "replay", AttackModel::Cpa, k); };
        NegligibilitySweep sweep =
            negligibility_sweep(family, GameKind::Ind, {4, 6, 8}, 400, 0.05, 2.0, 5);
        REQUIRE(sweep.points.size() == 3);
        for (const auto& p : sweep.points) {
            CHECK(p.estimate.adv_hat == 1.0);
            CHECK_FALSE(p.below_threshold);
        }
    }
    SUBCASE("coinflip stays inside its error band at every k") {
        auto family = [](int k) { return spec("identity", "coinflip", AttackModel::Cpa, k); };
        NegligibilitySweep sweep =
            negligibility_sweep(family, GameKind::Ind, {4, 6, 8}, 2000, 0.05, 2.0, 5);
        for (const auto& p : sweep.points)
            CHECK(std::fabs(p.estimate.adv_hat) <= 2 * p.estimate.epsilon);
    }
    SUBCASE("replay gets nothing from the ideal table at any k") {
        auto family = [](int k) { return spec("ideal_table", "replay", AttackModel::Cpa, k); };
        NegligibilitySweep sweep =
            negligibility_sweep(family, GameKind::Ind, {4, 6, 8}, 2000, 0.05, 2.0, 5);
        for (const auto& p : sweep.points)
            CHECK(std::fabs(p.estimate.adv_hat) <= 2 * p.estimate.epsilon);
    }
    SUBCASE("input validation") {
        auto family = [](int k) { return spec("identity", "coinflip", AttackModel::Cpa, k); };
        CHECK_THROWS_AS(negligibility_sweep(family, GameKind::Ind, {}, 10, 0.1, 2.0, 1), Error);
        CHECK_THROWS_AS(negligibility_sweep(family, GameKind::Ind, {8, 4}, 10, 0.1, 2.0, 1),
                        Error);
    }
}
