#include "seclab/games.hpp"

#include <chrono>

namespace seclab {

TapeLayout tape_layout(const GameSpec& spec, GameKind game) {
    TapeLayout l;
    l.keygen = spec.scheme.keygen_coins;
    l.encrypt = spec.scheme.encrypt_coins;
    if (game == GameKind::Ind) {
        if (!spec.holds_ind()) throw Error("IND game needs an IND adversary");
        l.phase1 = spec.ind().phase1_coins;
        l.phase2 = spec.ind().phase2_coins;
    } else {
        if (spec.holds_ind()) throw Error("CSS game needs a CSS adversary");
        if (!spec.sampler.has_value()) throw Error("CSS game needs a Sample algorithm");
        const auto& adv = spec.css();
        l.phase1 = adv.phase1_coins;
        l.phase2 = adv.phase2_coins;
        l.x1_draw = adv.space_bits;
        l.sample = spec.sampler->coin_bits(adv.space_bits);
    }
    return l;
}

std::vector<uint8_t> TrialRecord::serialize() const {
    std::vector<uint8_t> out;
    out.push_back(static_cast<uint8_t>(game));
    out.push_back(static_cast<uint8_t>(atk));
    out.push_back(static_cast<uint8_t>(b));
    out.push_back(static_cast<uint8_t>(d));
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(seed >> (8 * i)));
    if (challenge.has_value()) {
        out.push_back(1);
        out.push_back(static_cast<uint8_t>(challenge->size()));
        for (int i = 0; i < challenge->size(); ++i) out.push_back(challenge->bit(i));
    } else {
        out.push_back(0);
    }
    auto tr = transcript.serialize();
    out.insert(out.end(), tr.begin(), tr.end());
    return out;
}

uint64_t TrialRecord::digest() const {
    // FNV-1a 64 over the serialize() byte sequence, streamed to avoid
    // materializing the record on the enumerator's hot path. A unit
    // test pins equality with FNV(serialize()).
    uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](uint8_t byte) {
        h ^= byte;
        h *= 0x100000001b3ULL;
    };
    mix(static_cast<uint8_t>(game));
    mix(static_cast<uint8_t>(atk));
    mix(static_cast<uint8_t>(b));
    mix(static_cast<uint8_t>(d));
    for (int i = 0; i < 8; ++i) mix(static_cast<uint8_t>(seed >> (8 * i)));
    if (challenge.has_value()) {
        mix(1);
        mix(static_cast<uint8_t>(challenge->size()));
        for (int i = 0; i < challenge->size(); ++i) mix(challenge->bit(i));
    } else {
        mix(0);
    }
    for (uint8_t byte : transcript.serialize()) mix(byte);
    return h;
}

namespace {

struct Segments {
    CoinTape keygen, phase1, x1_draw, encrypt, sample, phase2;
};

// Failures inside an adversary phase are contract violations of the
// adversary, not of the experiment. Cap overruns keep their own type.
// Polynomial boundedness is not step-counted; a wall-clock cap per
// phase call stands in for it (checked after the call returns).
template <typename Fn>
auto guard_adversary(const char* phase, Fn&& fn) {
    auto started = std::chrono::steady_clock::now();
    auto check_clock = [&] {
        if (std::chrono::steady_clock::now() - started > kMaxPhaseWallClock)
            throw InvalidAdversaryOutput(std::string(phase) + " exceeded the wall-clock cap");
    };
    try {
        auto result = fn();
        check_clock();
        return result;
    } catch (const QueryCapExceeded&) {
        throw;
    } catch (const InvalidAdversaryOutput&) {
        throw;
    } catch (const Error& e) {
        throw InvalidAdversaryOutput(std::string(phase) + ": " + e.what());
    }
}

Segments split_tape(CoinTape& tape, const TapeLayout& l) {
    Segments s;
    s.keygen = tape.segment(l.keygen);
    s.phase1 = tape.segment(l.phase1);
    s.x1_draw = tape.segment(l.x1_draw);
    s.encrypt = tape.segment(l.encrypt);
    s.sample = tape.segment(l.sample);
    s.phase2 = tape.segment(l.phase2);
    return s;
}

TrialRecord run_ind_on_segments(const GameSpec& spec, int b, Segments& seg, uint64_t seed_label) {
    const IndAdversary& adv = spec.ind();
    KeyPair keys = spec.scheme.keygen(seg.keygen);
    OracleHandle oracle = open_oracle(spec.scheme, keys.sk, spec.atk);

    IndPhase1Result p1 =
        guard_adversary("phase 1", [&] { return adv.phase1(keys.pk, oracle, seg.phase1); });
    if (p1.x0.size() != p1.x1.size() || p1.x0.empty())
        throw InvalidAdversaryOutput("phase 1 emitted an unequal-length message pair");

    const Message& xb = b ? p1.x1 : p1.x0;
    Ciphertext y = spec.scheme.encrypt(keys.pk, xb, seg.encrypt);
    oracle.advance_to_phase2(y);

    int d = guard_adversary("phase 2", [&] {
                return adv.phase2(p1.x0, p1.x1, p1.state, y, oracle, seg.phase2);
            })
                ? 1
                : 0;
    return TrialRecord{GameKind::Ind, spec.atk, b, seed_label, d, oracle.transcript(), y};
}

TrialRecord run_css_on_segments(const GameSpec& spec, GameKind game, int b, Segments& seg,
                                uint64_t seed_label) {
    const CssAdversary& adv = spec.css();
    KeyPair keys = spec.scheme.keygen(seg.keygen);
    OracleHandle oracle = open_oracle(spec.scheme, keys.sk, spec.atk);

    CssPhase1Result p1 =
        guard_adversary("phase 1", [&] { return adv.phase1(keys.pk, oracle, seg.phase1); });
    const MessageSpace& space = p1.space;

    const bool split_b0 = (game == GameKind::CssSplit && b == 0);
    if (game == GameKind::CssSplit && !adv.supports_no_ciphertext)
        throw UnsupportedSplitExperiment("adversary cannot run phase 2 without a ciphertext");

    if (split_b0) {
        // x0 <- Sample(M, s); phase 2 sees no ciphertext. The x1/encrypt
        // segments stay unread, keeping the tape layout identical to the
        // unified experiment's.
        Message x0 = spec.sampler->sample(space, p1.state, seg.sample);
        oracle.advance_to_phase2(std::nullopt);
        PartialInfoClaim claim = guard_adversary(
            "phase 2", [&] { return adv.phase2_no_ciphertext(space, p1.state, oracle, seg.phase2); });
        int d = verify_partial_info(claim.function, x0, claim.value) ? 1 : 0;
        return TrialRecord{game, spec.atk, b, seed_label, d, oracle.transcript(), std::nullopt};
    }

    // Unified experiment (and the split experiment's b=1 branch):
    // x1 <- M; y <- E(x1); x0 <- Sample(M, s); score v against f(x_b).
    const Message& x1 = space.draw(seg.x1_draw, adv.space_bits);
    Ciphertext y = spec.scheme.encrypt(keys.pk, x1, seg.encrypt);
    Message x0 = spec.sampler->sample(space, p1.state, seg.sample);
    oracle.advance_to_phase2(y);

    PartialInfoClaim claim =
        guard_adversary("phase 2", [&] { return adv.phase2(space, p1.state, y, oracle, seg.phase2); });
    const Message& scored = b ? x1 : x0;
    int d = verify_partial_info(claim.function, scored, claim.value) ? 1 : 0;
    return TrialRecord{game, spec.atk, b, seed_label, d, oracle.transcript(), y};
}

} // namespace

TrialRecord run_trial_on_tape(const GameSpec& spec, GameKind game, int b, CoinTape tape,
                              uint64_t seed_label) {
    if (b != 0 && b != 1) throw Error("challenge bit must be 0 or 1");
    TapeLayout layout = tape_layout(spec, game);
    Segments seg = split_tape(tape, layout);
    if (game == GameKind::Ind) return run_ind_on_segments(spec, b, seg, seed_label);
    return run_css_on_segments(spec, game, b, seg, seed_label);
}

TrialRecord run_trial(const GameSpec& spec, GameKind game, int b, uint64_t seed) {
    TapeLayout layout = tape_layout(spec, game);
    return run_trial_on_tape(spec, game, b, CoinTape::from_seed(seed, layout.total()), seed);
}

TrialRecord run_ind_trial(const GameSpec& spec, int b, uint64_t seed) {
    return run_trial(spec, GameKind::Ind, b, seed);
}

TrialRecord run_css_trial(const GameSpec& spec, int b, uint64_t seed) {
    return run_trial(spec, GameKind::Css, b, seed);
}

TrialRecord run_css_split_trial(const GameSpec& spec, int b, uint64_t seed) {
    return run_trial(spec, GameKind::CssSplit, b, seed);
}

ExactArm exact_arm(const GameSpec& spec, GameKind game, int b, int total_coin_bits) {
    TapeLayout layout = tape_layout(spec, game);
    if (total_coin_bits > kMaxEnumerationBits)
        throw EnumerationInfeasible("enumeration cap is " + std::to_string(kMaxEnumerationBits) +
                                    " coin bits");
    if (layout.total() > total_coin_bits)
        throw EnumerationInfeasible("configuration needs " + std::to_string(layout.total()) +
                                    " coin bits, budget is " + std::to_string(total_coin_bits));

    // Unread trailing segments cannot change d, so iterating 2^total of
    // the layout yields the same reduced rational as 2^total_coin_bits.
    const int bits = layout.total();
    ExactArm arm;
    arm.tapes = 1ULL << bits;
    for (uint64_t v = 0; v < arm.tapes; ++v) {
        TrialRecord rec = run_trial_on_tape(spec, game, b, CoinTape::from_value(v, bits), v);
        arm.ones += static_cast<uint64_t>(rec.d);
        arm.transcript_digest ^= rec.digest();
    }
    arm.probability = Rational(static_cast<int64_t>(arm.ones), static_cast<int64_t>(arm.tapes));
    return arm;
}

Rational exact_trial_distribution(const GameSpec& spec, GameKind game, int b,
                                  int total_coin_bits) {
    return exact_arm(spec, game, b, total_coin_bits).probability;
}

bool record_satisfies_policy(const TrialRecord& record) {
    auto refused_as = [](const TranscriptEntry& e, RefusalKind kind) {
        return is_refusal(e.outcome) && std::get<Refusal>(e.outcome).kind == kind;
    };
    for (const auto& e : record.transcript.entries) {
        switch (record.atk) {
            case AttackModel::Cpa:
                if (!refused_as(e, RefusalKind::NullOracle)) return false;
                break;
            case AttackModel::Cca1:
                if (e.phase == OraclePhase::Phase1 && is_refusal(e.outcome)) return false;
                if (e.phase == OraclePhase::Phase2 && !refused_as(e, RefusalKind::NullOracle))
                    return false;
                break;
            case AttackModel::Cca2:
                if (e.phase == OraclePhase::Phase1 && is_refusal(e.outcome)) return false;
                if (e.phase == OraclePhase::Phase2) {
                    bool is_challenge =
                        record.challenge.has_value() && e.query == *record.challenge;
                    if (is_challenge != refused_as(e, RefusalKind::ChallengeBanned)) return false;
                    if (!is_challenge && is_refusal(e.outcome)) return false;
                }
                break;
        }
    }
    return true;
}

} // namespace seclab
