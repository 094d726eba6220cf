#pragma once

#include <cstdint>
#include <vector>

#include "seclab/games.hpp"
#include "seclab/rational.hpp"

namespace seclab {

/// Two-sided Hoeffding half-width for one arm: sqrt(ln(2/delta) / (2n)).
double hoeffding_epsilon(uint64_t n, double delta);

/// Smallest n with per-arm half-width <= epsilon:
/// ceil(ln(2/delta) / (2 epsilon^2)).
uint64_t required_trials(double epsilon, double delta);

struct AdvantageEstimate {
    double p1_hat = 0;
    double p0_hat = 0;
    double adv_hat = 0;
    uint64_t n = 0;        // trials per arm
    uint64_t count1 = 0;   // d=1 outcomes in the b=1 arm
    uint64_t count0 = 0;   // d=1 outcomes in the b=0 arm
    double epsilon = 0;    // per-arm half-width
    double delta = 0;
    double interval_lo = 0; // adv_hat - 2 epsilon, clamped to [-1, 1]
    double interval_hi = 0;
    uint64_t digest1 = 0; // per-arm transcript digests
    uint64_t digest0 = 0;
    uint64_t transcript_digest = 0; // combined
};

/// Exact advantage: both enumerated arms and their signed difference.
struct ExactAdvantage {
    ExactArm arm1;
    ExactArm arm0;
    Rational advantage;
    const Rational& p1() const { return arm1.probability; }
    const Rational& p0() const { return arm0.probability; }
};

/// n seeded trials per arm, disjoint seed streams, Hoeffding error bars.
/// A failing trial aborts the estimate with its seed as witness.
AdvantageEstimate estimate_advantage(const GameSpec& spec, GameKind game, uint64_t n, double delta,
                                     uint64_t master_seed);

ExactAdvantage exact_advantage(const GameSpec& spec, GameKind game,
                               int total_coin_bits = kMaxEnumerationBits);

struct SweepPoint {
    int k;
    AdvantageEstimate estimate;
    double threshold; // k^{-c}
    bool below_threshold;
};

/// Finite table of advantage versus k^{-c}; reports the data, claims no
/// asymptotic verdict.
struct NegligibilitySweep {
    std::vector<SweepPoint> points;
    double c;
};

NegligibilitySweep negligibility_sweep(const std::function<GameSpec(int)>& spec_family,
                                       GameKind game, const std::vector<int>& k_list, uint64_t n,
                                       double delta, double c, uint64_t master_seed);

} // namespace seclab
