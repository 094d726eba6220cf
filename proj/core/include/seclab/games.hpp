#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "seclab/model.hpp"
#include "seclab/oracle.hpp"
#include "seclab/rational.hpp"

namespace seclab {

enum class GameKind { Ind, Css, CssSplit };

inline const char* to_string(GameKind g) {
    switch (g) {
        case GameKind::Ind: return "ind";
        case GameKind::Css: return "css";
        case GameKind::CssSplit: return "css_split";
    }
    return "?";
}

/// One experiment configuration: scheme, adversary, attack model, and
/// (for CSS games) the comparison baseline.
struct GameSpec {
    Scheme scheme;
    std::variant<IndAdversary, CssAdversary> adversary;
    AttackModel atk;
    std::optional<SampleAlgorithm> sampler; // CSS only
    SecurityParameter k;

    bool holds_ind() const { return std::holds_alternative<IndAdversary>(adversary); }
    const IndAdversary& ind() const { return std::get<IndAdversary>(adversary); }
    const CssAdversary& css() const { return std::get<CssAdversary>(adversary); }
    std::string adversary_id() const { return holds_ind() ? ind().id : css().id; }
};

/// Fixed draw order: keygen, phase 1, x1 draw, encrypt, Sample, phase 2.
/// Each component reads its declared budget from a disjoint tape
/// segment, so enumeration is well defined and components decorrelate.
struct TapeLayout {
    int keygen = 0;
    int phase1 = 0;
    int x1_draw = 0;
    int encrypt = 0;
    int sample = 0;
    int phase2 = 0;
    int total() const { return keygen + phase1 + x1_draw + encrypt + sample + phase2; }
};

TapeLayout tape_layout(const GameSpec& spec, GameKind game);

struct TrialRecord {
    GameKind game;
    AttackModel atk;
    int b;
    uint64_t seed; // master seed, or the tape value when enumerating
    int d;
    OracleTranscript transcript;
    std::optional<Ciphertext> challenge; // absent for the split experiment at b=0

    std::vector<uint8_t> serialize() const;
    uint64_t digest() const;
};

// Single-trial executors. Pure in (spec, b, tape); the seed variants
// derive the tape from the documented stream and stamp the seed into
// the record.
TrialRecord run_ind_trial(const GameSpec& spec, int b, uint64_t seed);
TrialRecord run_css_trial(const GameSpec& spec, int b, uint64_t seed);
TrialRecord run_css_split_trial(const GameSpec& spec, int b, uint64_t seed);

TrialRecord run_trial(const GameSpec& spec, GameKind game, int b, uint64_t seed);
TrialRecord run_trial_on_tape(const GameSpec& spec, GameKind game, int b, CoinTape tape,
                              uint64_t seed_label);

/// Post-hoc audit: the record's transcript obeys the access rules of
/// its attack model (null oracle answers nothing, CCA1 loses phase 2,
/// CCA2 refuses exactly the recorded challenge in phase 2).
bool record_satisfies_policy(const TrialRecord& record);

/// Largest coin budget the enumerator accepts.
constexpr int kMaxEnumerationBits = 24;

/// One fully enumerated experiment arm.
struct ExactArm {
    uint64_t ones = 0;  // tapes with d = 1
    uint64_t tapes = 0; // 2^(layout total)
    Rational probability;
    uint64_t transcript_digest = 0;
};

ExactArm exact_arm(const GameSpec& spec, GameKind game, int b,
                   int total_coin_bits = kMaxEnumerationBits);

/// Exact Pr[d = 1] by iterating every coin tape value once.
Rational exact_trial_distribution(const GameSpec& spec, GameKind game, int b,
                                  int total_coin_bits = kMaxEnumerationBits);

} // namespace seclab
