#include <benchmark/benchmark.h>

#include "seclab/corpus.hpp"
#include "seclab/reductions.hpp"
#include "seclab/stats.hpp"

using namespace seclab;

namespace {

GameSpec spec_for(const std::string& scheme, const std::string& adversary, AttackModel atk,
                  int k = 4) {
    return corpus::make_spec(scheme, adversary, atk, SecurityParameter(k), "uniform");
}

void BM_IndTrial(benchmark::State& state, const char* scheme, const char* adversary,
                 AttackModel atk) {
    GameSpec spec = spec_for(scheme, adversary, atk);
    uint64_t seed = 0;
    for (auto _ : state) {
        TrialRecord rec = run_ind_trial(spec, 1, seed++);
        benchmark::DoNotOptimize(rec.d);
    }
}

void BM_CssTrial(benchmark::State& state, const char* scheme, const char* adversary) {
    GameSpec spec = spec_for(scheme, adversary, AttackModel::Cpa);
    uint64_t seed = 0;
    for (auto _ : state) {
        TrialRecord rec = run_css_trial(spec, 1, seed++);
        benchmark::DoNotOptimize(rec.d);
    }
}

void BM_ExactEnumeration(benchmark::State& state) {
    GameSpec spec = spec_for("xor_malleable", "bitflip", AttackModel::Cca2);
    for (auto _ : state) {
        Rational p = exact_trial_distribution(spec, GameKind::Ind, 1);
        benchmark::DoNotOptimize(p.num);
    }
    state.SetItemsProcessed(state.iterations() *
                            (1LL << tape_layout(spec, GameKind::Ind).total()));
}

void BM_EstimateAdvantage(benchmark::State& state) {
    GameSpec spec = spec_for("leaky_lsb", "lsb_extractor", AttackModel::Cpa);
    uint64_t n = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        AdvantageEstimate est = estimate_advantage(spec, GameKind::Css, n, 0.01, 7);
        benchmark::DoNotOptimize(est.adv_hat);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(2 * n));
}

void BM_OracleQuery(benchmark::State& state) {
    Scheme scheme = corpus::build_scheme("xor_malleable", SecurityParameter(4));
    CoinTape kg = CoinTape::from_seed(1, scheme.keygen_coins);
    KeyPair keys = scheme.keygen(kg);
    OracleHandle oracle = open_oracle(scheme, keys.sk, AttackModel::Cca2,
                                      /*query_cap=*/1 << 30);
    Ciphertext y = BitString::from_uint(0xA5, scheme.ciphertext_bits);
    for (auto _ : state) {
        OracleReply r = oracle.query(y);
        benchmark::DoNotOptimize(r);
    }
}

void BM_ReductionTrial(benchmark::State& state) {
    SecurityParameter k(4);
    GameSpec spec{corpus::build_scheme("leaky_lsb", k),
                  ind_from_css(corpus::build_css_adversary("lsb_extractor", k),
                               TieBreakMode::CoinFlip),
                  AttackModel::Cpa, std::nullopt, k};
    uint64_t seed = 0;
    for (auto _ : state) {
        TrialRecord rec = run_ind_trial(spec, 1, seed++);
        benchmark::DoNotOptimize(rec.d);
    }
}

} // namespace

BENCHMARK_CAPTURE(BM_IndTrial, identity_replay_cpa, "identity", "replay", AttackModel::Cpa);
BENCHMARK_CAPTURE(BM_IndTrial, xor_bitflip_cca2, "xor_malleable", "bitflip", AttackModel::Cca2);
BENCHMARK_CAPTURE(BM_CssTrial, leaky_lsb_extractor, "leaky_lsb", "lsb_extractor");
BENCHMARK(BM_ExactEnumeration);
BENCHMARK(BM_EstimateAdvantage)->Arg(1000)->Arg(10000);
BENCHMARK(BM_OracleQuery);
BENCHMARK(BM_ReductionTrial);

BENCHMARK_MAIN();
