#include "seclab/stats.hpp"

#include <algorithm>
#include <cmath>

namespace seclab {

double hoeffding_epsilon(uint64_t n, double delta) {
    if (n == 0 || delta <= 0.0 || delta >= 1.0) throw Error("bad Hoeffding parameters");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

uint64_t required_trials(double epsilon, double delta) {
    if (epsilon <= 0.0 || epsilon >= 1.0 || delta <= 0.0 || delta >= 1.0)
        throw Error("bad planning parameters");
    return static_cast<uint64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon * epsilon)));
}

namespace {

struct ArmResult {
    uint64_t ones = 0;
    uint64_t digest = 0;
};

ArmResult run_arm(const GameSpec& spec, GameKind game, int b, uint64_t n, uint64_t master_seed) {
    ArmResult r;
    for (uint64_t i = 0; i < n; ++i) {
        uint64_t seed = derive_trial_seed(master_seed, b, i);
        TrialRecord rec;
        auto witness = [b, seed](const char* what) {
            return "trial failed (b=" + std::to_string(b) + ", seed=" + std::to_string(seed) +
                   "): " + what;
        };
        try {
            rec = run_trial(spec, game, b, seed);
        } catch (const InvalidAdversaryOutput& e) {
            throw InvalidAdversaryOutput(witness(e.what()));
        } catch (const Error& e) {
            throw Error(witness(e.what()));
        }
        r.ones += static_cast<uint64_t>(rec.d);
        r.digest ^= rec.digest(); // commutative combine: order-independent aggregation
    }
    return r;
}

} // namespace

AdvantageEstimate estimate_advantage(const GameSpec& spec, GameKind game, uint64_t n, double delta,
                                     uint64_t master_seed) {
    if (n < 1) throw Error("at least one trial per arm");
    ArmResult arm1 = run_arm(spec, game, 1, n, master_seed);
    ArmResult arm0 = run_arm(spec, game, 0, n, master_seed);

    AdvantageEstimate est;
    est.n = n;
    est.count1 = arm1.ones;
    est.count0 = arm0.ones;
    est.p1_hat = static_cast<double>(arm1.ones) / static_cast<double>(n);
    est.p0_hat = static_cast<double>(arm0.ones) / static_cast<double>(n);
    est.adv_hat = est.p1_hat - est.p0_hat;
    est.delta = delta;
    est.epsilon = hoeffding_epsilon(n, delta);
    est.interval_lo = std::max(-1.0, est.adv_hat - 2.0 * est.epsilon);
    est.interval_hi = std::min(1.0, est.adv_hat + 2.0 * est.epsilon);
    est.digest1 = arm1.digest;
    est.digest0 = arm0.digest;
    est.transcript_digest = arm1.digest ^ (arm0.digest * 0x9E3779B97F4A7C15ULL);
    return est;
}

ExactAdvantage exact_advantage(const GameSpec& spec, GameKind game, int total_coin_bits) {
    ExactAdvantage adv;
    adv.arm1 = exact_arm(spec, game, 1, total_coin_bits);
    adv.arm0 = exact_arm(spec, game, 0, total_coin_bits);
    adv.advantage = adv.p1() - adv.p0();
    return adv;
}

NegligibilitySweep negligibility_sweep(const std::function<GameSpec(int)>& spec_family,
                                       GameKind game, const std::vector<int>& k_list, uint64_t n,
                                       double delta, double c, uint64_t master_seed) {
    if (k_list.empty()) throw Error("empty k list");
    if (!std::is_sorted(k_list.begin(), k_list.end())) throw Error("k list must ascend");

    NegligibilitySweep sweep;
    sweep.c = c;
    for (int k : k_list) {
        GameSpec spec = spec_family(k);
        AdvantageEstimate est =
            estimate_advantage(spec, game, n, delta, mix64(master_seed ^ static_cast<uint64_t>(k)));
        double threshold = std::pow(static_cast<double>(k), -c);
        sweep.points.push_back({k, est, threshold, std::fabs(est.adv_hat) < threshold});
    }
    return sweep;
}

} // namespace seclab
