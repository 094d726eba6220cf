#pragma once

#include <string>

#include "seclab/corpus.hpp"
#include "seclab/games.hpp"

namespace seclab::testing {

inline GameSpec spec(const std::string& scheme, const std::string& adversary, AttackModel atk,
                     int k = 4, const std::string& sampler = "uniform") {
    return corpus::make_spec(scheme, adversary, atk, SecurityParameter(k), sampler);
}

inline Rational exact_adv(const GameSpec& s, GameKind game) {
    return exact_trial_distribution(s, game, 1) - exact_trial_distribution(s, game, 0);
}

} // namespace seclab::testing
