#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "seclab/bitstring.hpp"
#include "seclab/coins.hpp"
#include "seclab/errors.hpp"

namespace seclab {

class OracleHandle; // oracle.hpp

// ===========================================================================
// Domain types
// ===========================================================================

struct SecurityParameter {
    int value;
    explicit SecurityParameter(int k) : value(k) {
        if (k < 1) throw Error("security parameter must be >= 1");
    }
};

using Message = BitString;
using Ciphertext = BitString;
using Value = BitString;

/// Longest partial-information value the framework will score.
constexpr int kMaxValueBits = 256;

/// Longest phase-1 -> phase-2 state blob, in bytes.
constexpr size_t kMaxStateBytes = 4096;

/// Wall-clock budget for one adversary phase call. Stands in for
/// polynomial boundedness at desk scale, next to the oracle query cap.
constexpr std::chrono::milliseconds kMaxPhaseWallClock{1000};

struct KeyPair {
    BitString pk;
    BitString sk;
};

/// Decryption output: a message, or rejection (the distinguished
/// "no legal decryption" symbol, held as nullopt).
using DecryptResult = std::optional<Message>;

inline bool is_bottom(const DecryptResult& r) { return !r.has_value(); }

enum class AttackModel { Cpa, Cca1, Cca2 };

inline const char* to_string(AttackModel atk) {
    switch (atk) {
        case AttackModel::Cpa: return "cpa";
        case AttackModel::Cca1: return "cca1";
        case AttackModel::Cca2: return "cca2";
    }
    return "?";
}

/// Phase-1 to phase-2 state. Opaque to the framework.
struct StateInfo {
    std::vector<uint8_t> bytes;

    StateInfo() = default;
    explicit StateInfo(std::vector<uint8_t> b) : bytes(std::move(b)) {
        if (bytes.size() > kMaxStateBytes) throw InvalidAdversaryOutput("state blob over size cap");
    }
};

/// Finite ordered list of distinct, equal-length messages. Construction
/// enforces the invariants; sampling is by index. Immutable after
/// construction, so copies share storage.
class MessageSpace {
public:
    explicit MessageSpace(std::vector<Message> elements) {
        if (elements.empty()) throw Error("empty message space");
        bit_length_ = elements.front().size();
        if (bit_length_ <= 0) throw Error("message space with empty messages");
        for (const auto& m : elements) {
            if (m.size() != bit_length_) throw Error("message space with unequal lengths");
        }
        for (size_t i = 0; i < elements.size(); ++i)
            for (size_t j = i + 1; j < elements.size(); ++j)
                if (elements[i] == elements[j]) throw Error("message space with duplicate elements");
        elems_ = std::make_shared<const std::vector<Message>>(std::move(elements));
    }

    /// The full space {0,1}^k (capped at 256 elements), memoized per k.
    static MessageSpace full(int k);

    size_t size() const { return elems_->size(); }
    int bit_length() const { return bit_length_; }
    const Message& at(size_t i) const { return elems_->at(i); }
    const std::vector<Message>& elements() const { return *elems_; }

    /// Uniform index draw using `width` coin bits (value mod size).
    /// Exactly uniform whenever the element count divides 2^width, which
    /// holds for every power-of-two space in the corpus.
    const Message& draw(CoinTape& tape, int width) const {
        return (*elems_)[static_cast<size_t>(tape.draw_bits(width) % elems_->size())];
    }

private:
    std::shared_ptr<const std::vector<Message>> elems_;
    int bit_length_;
};

/// Partial-information function with its verifier. The verifier is the
/// scoring authority: experiments never compare against a recomputed
/// f(x) directly.
struct PartialInfoFunction {
    std::string description;
    std::function<bool(const Message&)> in_domain;
    std::function<Value(const Message&)> evaluate;
    std::function<bool(const Message&, const Value&)> verify;

    /// Canonical verifier: accept exactly the true value.
    static PartialInfoFunction from_evaluator(std::string description,
                                              std::function<bool(const Message&)> in_domain,
                                              std::function<Value(const Message&)> evaluate);
};

/// The (claimed value, function) pair a CSS adversary outputs. A claim
/// may be wrong; scoring happens in the experiments.
struct PartialInfoClaim {
    Value value;
    PartialInfoFunction function;
};

// ===========================================================================
// Behavioral contracts
//
// Every algorithm is a pure function of its inputs plus an explicit coin
// tape segment sized by the declared budget, so trials are reproducible
// and exhaustively enumerable.
// ===========================================================================

struct Scheme {
    std::string id;
    int message_bits = 0;
    int ciphertext_bits = 0;
    int keygen_coins = 0;
    int encrypt_coins = 0; // max random bits consumed per encryption

    std::function<KeyPair(CoinTape&)> keygen;
    std::function<Ciphertext(const BitString& pk, const Message& x, CoinTape&)> encrypt;
    std::function<DecryptResult(const BitString& sk, const Ciphertext& y)> decrypt;
};

struct IndPhase1Result {
    Message x0;
    Message x1;
    StateInfo state;
};

struct IndAdversary {
    std::string id;
    int phase1_coins = 0;
    int phase2_coins = 0;

    std::function<IndPhase1Result(const BitString& pk, OracleHandle&, CoinTape&)> phase1;
    std::function<int(const Message& x0, const Message& x1, const StateInfo&, const Ciphertext& y,
                      OracleHandle&, CoinTape&)>
        phase2;
};

struct CssPhase1Result {
    MessageSpace space;
    StateInfo state;
};

struct CssAdversary {
    std::string id;
    int phase1_coins = 0;
    int phase2_coins = 0;
    int space_bits = 0; // ceil(log2 |M|) for the space phase1 emits

    std::function<CssPhase1Result(const BitString& pk, OracleHandle&, CoinTape&)> phase1;
    std::function<PartialInfoClaim(const MessageSpace&, const StateInfo&, const Ciphertext& y,
                                   OracleHandle&, CoinTape&)>
        phase2;

    /// Split-experiment capability: phase 2 without a ciphertext.
    bool supports_no_ciphertext = false;
    std::function<PartialInfoClaim(const MessageSpace&, const StateInfo&, OracleHandle&, CoinTape&)>
        phase2_no_ciphertext;
};

/// The comparison baseline ("Sample"): guesses a message without seeing
/// the ciphertext.
struct SampleAlgorithm {
    std::string id;
    std::function<int(int space_bits)> coin_bits;
    std::function<Message(const MessageSpace&, const StateInfo&, CoinTape&)> sample;
};

// ===========================================================================
// Operations
// ===========================================================================

/// verify(x, v) through the function's own verifier; throws DomainError
/// outside the declared domain.
bool verify_partial_info(const PartialInfoFunction& f, const Message& x, const Value& v);

/// Uniform draw from a space using ceil(log2 |space|) coins.
Message uniform_sample(const MessageSpace& space, CoinTape& tape);

struct CorrectnessFailure {
    uint64_t keygen_tape;
    Message message;
    uint64_t coin_tape;
    DecryptResult got;
};

struct CorrectnessReport {
    uint64_t pairs_tested = 0;
    std::vector<CorrectnessFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Round-trip decrypt(encrypt(x)) = x over every (message, coin) pair
/// with coins enumerated over 2^coin_tape_bits values. Keygen tapes are
/// enumerated exhaustively when the budget allows, otherwise sampled
/// from 16 derived seeds. Mismatches are reported with witnesses, never
/// thrown.
CorrectnessReport scheme_correctness_check(const Scheme& scheme, SecurityParameter k,
                                           int coin_tape_bits);

} // namespace seclab
