#include <doctest.h>

#include "helpers.hpp"
#include "seclab/reductions.hpp"

using namespace seclab;
using seclab::testing::spec;

namespace {

GameSpec constructed_css_spec(const std::string& scheme_id, const std::string& ind_id,
                              AttackModel atk, int k = 4) {
    SecurityParameter sp(k);
    return GameSpec{corpus::build_scheme(scheme_id, sp),
                    css_from_ind(corpus::build_ind_adversary(ind_id, sp)), atk,
                    corpus::build_sampler("uniform"), sp};
}

GameSpec constructed_ind_spec(const std::string& scheme_id, const std::string& css_id,
                              TieBreakMode mode, AttackModel atk, int k = 4) {
    SecurityParameter sp(k);
    return GameSpec{corpus::build_scheme(scheme_id, sp),
                    ind_from_css(corpus::build_css_adversary(css_id, sp), mode), atk, std::nullopt,
                    sp};
}

} // namespace

TEST_CASE("two-point function verifies exhaustively on its domain") {
    Message x0 = BitString::from_uint(0b0000, 4);
    Message x1 = BitString::from_uint(0b0011, 4);
    PartialInfoFunction f = two_point_function(x0, x1);

    CHECK(verify_partial_info(f, x0, BitString::from_uint(0, 1)));
    CHECK_FALSE(verify_partial_info(f, x0, BitString::from_uint(1, 1)));
    CHECK(verify_partial_info(f, x1, BitString::from_uint(1, 1)));
    CHECK_FALSE(verify_partial_info(f, x1, BitString::from_uint(0, 1)));
    // a value of the wrong width is never the true value
    CHECK_FALSE(verify_partial_info(f, x0, BitString::from_uint(0, 2)));
    CHECK_THROWS_AS(verify_partial_info(f, BitString::from_uint(0b0001, 4),
                                        BitString::from_uint(0, 1)),
                    DomainError);
    CHECK_THROWS_AS(two_point_function(x0, x0), Error);
    CHECK_THROWS_AS(two_point_function(x0, BitString::from_uint(0, 3)), Error);
}

TEST_CASE("forward identity: constructed css advantage is half the ind advantage") {
    struct Case {
        const char* scheme;
        const char* adversary;
        AttackModel atk;
        Rational ind_adv;
    };
    const Case cases[] = {
        {"identity", "replay", AttackModel::Cpa, Rational(1, 1)},
        {"identity", "coinflip", AttackModel::Cpa, Rational(0, 1)},
        {"xor_malleable", "bitflip", AttackModel::Cca2, Rational(1, 1)},
        {"cca1_key_leak", "cca1_table", AttackModel::Cca1, Rational(1, 1)},
    };
    for (const auto& c : cases) {
        CAPTURE(c.scheme);
        CAPTURE(c.adversary);
        GameSpec original = spec(c.scheme, c.adversary, c.atk);
        ExactAdvantage ind_adv = exact_advantage(original, GameKind::Ind);
        REQUIRE(ind_adv.advantage == c.ind_adv);

        ExactAdvantage css_adv =
            exact_advantage(constructed_css_spec(c.scheme, c.adversary, c.atk), GameKind::Css);
        CHECK(css_adv.advantage == Rational(1, 2) * ind_adv.advantage);

        AdvantageSide orig{c.scheme, c.atk, ind_adv};
        AdvantageSide cons{c.scheme, c.atk, css_adv};
        ResidualReport report =
            check_reduction_identity(orig, cons, identity_scale(ReductionDirection::CssFromInd));
        CHECK(report.pass);
        CHECK(report.residual == Rational(0, 1));
    }
}

TEST_CASE("reverse identity holds exactly under the coin-flip tie break") {
    SUBCASE("lsb extractor on the leaky scheme: both sides exactly 1/2") {
        GameSpec original = spec("leaky_lsb", "lsb_extractor", AttackModel::Cpa);
        ExactAdvantage css_adv = exact_advantage(original, GameKind::Css);
        REQUIRE(css_adv.advantage == Rational(1, 2));

        GameSpec constructed =
            constructed_ind_spec("leaky_lsb", "lsb_extractor", TieBreakMode::CoinFlip,
                                 AttackModel::Cpa);
        ExactAdvantage ind_adv = exact_advantage(constructed, GameKind::Ind);
        CHECK(ind_adv.p1() == Rational(3, 4));
        CHECK(ind_adv.p0() == Rational(1, 4));
        CHECK(ind_adv.advantage == Rational(1, 2));
    }
    SUBCASE("constant adversary: zero on both sides, tie break mode shifts only the arms") {
        GameSpec original = spec("identity", "constant", AttackModel::Cpa);
        REQUIRE(exact_advantage(original, GameKind::Css).advantage == Rational(0, 1));

        ExactAdvantage coin = exact_advantage(
            constructed_ind_spec("identity", "constant", TieBreakMode::CoinFlip, AttackModel::Cpa),
            GameKind::Ind);
        CHECK(coin.p1() == Rational(1, 2));
        CHECK(coin.advantage == Rational(0, 1));

        ExactAdvantage last = exact_advantage(
            constructed_ind_spec("identity", "constant", TieBreakMode::LastIfWins,
                                 AttackModel::Cpa),
            GameKind::Ind);
        CHECK(last.p1() == Rational(1, 1));
        CHECK(last.p0() == Rational(1, 1));
        CHECK(last.advantage == Rational(0, 1));
    }
}

TEST_CASE("tie break modes differ only where the claim matches both candidates") {
    // per-tape comparison: whenever the modes disagree, the sequential
    // rule must have written 1 and the coin must have said 0
    GameSpec coin_spec =
        constructed_ind_spec("leaky_lsb", "lsb_extractor", TieBreakMode::CoinFlip,
                             AttackModel::Cpa);
    GameSpec last_spec =
        constructed_ind_spec("leaky_lsb", "lsb_extractor", TieBreakMode::LastIfWins,
                             AttackModel::Cpa);
    TapeLayout layout = tape_layout(coin_spec, GameKind::Ind);
    REQUIRE(layout.total() == tape_layout(last_spec, GameKind::Ind).total());

    uint64_t diffs = 0;
    for (int b : {0, 1}) {
        for (uint64_t v = 0; v < (1ULL << layout.total()); ++v) {
            int d_coin = run_trial_on_tape(coin_spec, GameKind::Ind, b,
                                           CoinTape::from_value(v, layout.total()), v)
                             .d;
            int d_last = run_trial_on_tape(last_spec, GameKind::Ind, b,
                                           CoinTape::from_value(v, layout.total()), v)
                             .d;
            if (d_coin != d_last) {
                ++diffs;
                CHECK(d_last == 1);
                CHECK(d_coin == 0);
            }
        }
    }
    CHECK(diffs > 0); // the lsb claim does match both candidates on some tapes

    // the advantages still agree: the tie-break shift cancels in the subtraction
    CHECK(exact_advantage(last_spec, GameKind::Ind).advantage ==
          exact_advantage(coin_spec, GameKind::Ind).advantage);
    CHECK(exact_advantage(last_spec, GameKind::Ind).p1() == Rational(1, 1));
    CHECK(exact_advantage(coin_spec, GameKind::Ind).p1() == Rational(3, 4));
}

TEST_CASE("the coin-flip analysis formula reproduces the constructed arm exactly") {
    // with q(b) the probability that the claim matches the message the
    // challenge encrypts (q1) or an independent uniform draw (q0), the
    // constructed distinguisher's b=1 arm is
    //   q1 (1 - q0) + 1/2 (q1 q0 + (1 - q1)(1 - q0))
    for (const char* scheme_id : {"identity", "leaky_lsb", "ideal_table"}) {
        for (const char* adv_id : {"lsb_extractor", "constant"}) {
            CAPTURE(scheme_id);
            CAPTURE(adv_id);
            GameSpec css = spec(scheme_id, adv_id, AttackModel::Cpa);
            Rational q1 = exact_trial_distribution(css, GameKind::Css, 1);
            Rational q0 = exact_trial_distribution(css, GameKind::Css, 0);

            GameSpec ind = constructed_ind_spec(scheme_id, adv_id, TieBreakMode::CoinFlip,
                                                AttackModel::Cpa);
            Rational p1 = exact_trial_distribution(ind, GameKind::Ind, 1);

            Rational one = Rational::integer(1);
            Rational half(1, 2);
            Rational predicted =
                q1 * (one - q0) + half * (q1 * q0 + (one - q1) * (one - q0));
            CHECK(p1 == predicted);
            // equivalently 1/2 + (q1 - q0)/2
            CHECK(p1 == half + half * (q1 - q0));
        }
    }
}

TEST_CASE("forwarding fidelity: the wrapped adversary's queries pass through unchanged") {
    SUBCASE("phase 1 queries under cca1") {
        SecurityParameter k(4);
        Scheme scheme = corpus::build_scheme("cca1_key_leak", k);
        IndAdversary inner = corpus::build_ind_adversary("cca1_table", k);
        GameSpec ind_spec{scheme, inner, AttackModel::Cca1, std::nullopt, k};
        GameSpec css_spec{scheme, css_from_ind(inner), AttackModel::Cca1,
                          corpus::build_sampler("uniform"), k};

        for (uint64_t kg = 0; kg < 16; ++kg) {
            // ind tape: [kg:4][p2:1]; css tape: [kg:4][x1:1][smp:1][p2:1]
            uint64_t tape_ind = kg;
            uint64_t tape_css = kg | (1ULL << 4);
            TrialRecord a = run_trial_on_tape(ind_spec, GameKind::Ind, 1,
                                              CoinTape::from_value(tape_ind, 5), 0);
            TrialRecord b = run_trial_on_tape(css_spec, GameKind::Css, 1,
                                              CoinTape::from_value(tape_css, 7), 0);
            REQUIRE(a.transcript.entries.size() == 1);
            REQUIRE(b.transcript.entries.size() == 1);
            CHECK(a.transcript.serialize() == b.transcript.serialize());
        }
    }
    SUBCASE("phase 2 queries under cca2, challenge aligned") {
        SecurityParameter k(4);
        Scheme scheme = corpus::build_scheme("xor_malleable", k);
        IndAdversary inner = corpus::build_ind_adversary("bitflip", k);
        GameSpec ind_spec{scheme, inner, AttackModel::Cca2, std::nullopt, k};
        GameSpec css_spec{scheme, css_from_ind(inner), AttackModel::Cca2,
                          corpus::build_sampler("uniform"), k};

        for (uint64_t v = 0; v < (1ULL << 13); v += 97) {
            // ind tape: [kg:8][enc:4][p2:1]
            uint64_t kg = v & 0xff;
            uint64_t enc = (v >> 8) & 0xf;
            uint64_t p2 = (v >> 12) & 1;
            // css tape: [kg:8][x1:1][enc:4][smp:1][p2:1], x1 draw = index 1
            uint64_t tape_css = kg | (1ULL << 8) | (enc << 9) | (0ULL << 13) | (p2 << 14);
            TrialRecord a =
                run_trial_on_tape(ind_spec, GameKind::Ind, 1, CoinTape::from_value(v, 13), 0);
            TrialRecord b = run_trial_on_tape(css_spec, GameKind::Css, 1,
                                              CoinTape::from_value(tape_css, 15), 0);
            CHECK(a.challenge == b.challenge);
            CHECK(a.transcript.serialize() == b.transcript.serialize());
        }
    }
}

TEST_CASE("construction error paths") {
    SUBCASE("distinguisher emitting identical messages") {
        SecurityParameter k(4);
        IndAdversary degenerate = corpus::build_ind_adversary("replay", k);
        degenerate.phase1 = [](const BitString&, OracleHandle&, CoinTape&) {
            return IndPhase1Result{BitString::from_uint(5, 4), BitString::from_uint(5, 4),
                                   StateInfo{}};
        };
        GameSpec s{corpus::build_scheme("identity", k), css_from_ind(degenerate), AttackModel::Cpa,
                   corpus::build_sampler("uniform"), k};
        CHECK_THROWS_AS(run_css_trial(s, 1, 1), InvalidAdversaryOutput);
    }
    SUBCASE("css adversary with a singleton space") {
        SecurityParameter k(4);
        CssAdversary tiny = corpus::build_css_adversary("constant", k);
        tiny.phase1 = [](const BitString&, OracleHandle&, CoinTape&) {
            return CssPhase1Result{MessageSpace({BitString::from_uint(0, 4)}), StateInfo{}};
        };
        GameSpec s{corpus::build_scheme("identity", k), ind_from_css(tiny, TieBreakMode::CoinFlip),
                   AttackModel::Cpa, std::nullopt, k};
        CHECK_THROWS_AS(run_ind_trial(s, 1, 1), InvalidAdversaryOutput);
    }
}

TEST_CASE("identity check input validation and tolerance") {
    GameSpec a = spec("identity", "coinflip", AttackModel::Cpa);
    ExactAdvantage adv = exact_advantage(a, GameKind::Ind);

    AdvantageSide lhs{"identity", AttackModel::Cpa, adv};
    AdvantageSide wrong_scheme{"leaky_lsb", AttackModel::Cpa, adv};
    AdvantageSide wrong_atk{"identity", AttackModel::Cca1, adv};
    CHECK_THROWS_AS(check_reduction_identity(lhs, wrong_scheme), IncomparableConfigurations);
    CHECK_THROWS_AS(check_reduction_identity(lhs, wrong_atk), IncomparableConfigurations);

    AdvantageEstimate est = estimate_advantage(a, GameKind::Ind, 100, 0.01, 3);
    AdvantageSide mixed{"identity", AttackModel::Cpa, est};
    CHECK_THROWS_AS(check_reduction_identity(lhs, mixed), IncomparableConfigurations);

    // estimated inputs: the accepted band is the sum of both interval half-widths
    AdvantageSide e1{"identity", AttackModel::Cpa, est};
    ResidualReport r = check_reduction_identity(e1, e1);
    CHECK(r.tolerance == doctest::Approx(4 * est.epsilon));
    CHECK(r.pass);
}
