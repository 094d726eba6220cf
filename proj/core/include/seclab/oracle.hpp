#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "seclab/model.hpp"

namespace seclab {

enum class OraclePhase { Phase1, Phase2 };

enum class RefusalKind {
    NullOracle,      // no decryption oracle in this phase under this attack model
    ChallengeBanned, // CCA2 phase 2 query equal to the challenge, bit for bit
};

struct Refusal {
    RefusalKind kind;
};

/// Refusals are visible to the adversary; it may react to them. Only
/// query-cap overruns abort a trial.
using OracleReply = std::variant<DecryptResult, Refusal>;

inline bool is_refusal(const OracleReply& r) { return std::holds_alternative<Refusal>(r); }

struct OraclePolicy {
    AttackModel atk;
    OraclePhase phase;
    std::optional<Ciphertext> banned_challenge; // set iff phase 2 under CCA2 with a challenge
    int query_cap;
};

struct TranscriptEntry {
    OraclePhase phase;
    Ciphertext query;
    OracleReply outcome;
};

struct OracleTranscript {
    std::vector<TranscriptEntry> entries;

    /// Canonical byte encoding, for digests and determinism checks.
    std::vector<uint8_t> serialize() const;
};

constexpr int kDefaultQueryCap = 1 << 16;

/// Gate in front of a scheme's decryption enforcing the per-attack
/// access rules. Single-owner and single-threaded: it carries phase,
/// transcript and per-phase query counts. Distinct trials hold distinct
/// handles.
class OracleHandle {
public:
    OracleHandle(const Scheme& scheme, BitString sk, AttackModel atk,
                 int query_cap = kDefaultQueryCap);

    OracleHandle(const OracleHandle&) = delete;
    OracleHandle& operator=(const OracleHandle&) = delete;
    OracleHandle(OracleHandle&&) = default;

    /// Transition into phase 2. The challenge is recorded (and banned
    /// under CCA2) when present; the split experiment's b=0 branch has
    /// no challenge. Throws on a second transition.
    void advance_to_phase2(const std::optional<Ciphertext>& challenge);

    /// Decrypt y if the policy allows; either way the call is recorded.
    OracleReply query(const Ciphertext& y);

    OraclePhase phase() const { return phase_; }
    OraclePolicy policy() const;
    const OracleTranscript& transcript() const { return transcript_; }

private:
    bool oracle_live() const;

    const Scheme* scheme_;
    BitString sk_;
    AttackModel atk_;
    OraclePhase phase_ = OraclePhase::Phase1;
    std::optional<Ciphertext> banned_;
    int query_cap_;
    int phase_queries_ = 0;
    OracleTranscript transcript_;
};

/// Phase-1 handle with the policy for `atk`: CPA gets the null oracle,
/// CCA1/CCA2 get live decryption.
OracleHandle open_oracle(const Scheme& scheme, const BitString& sk, AttackModel atk,
                         int query_cap = kDefaultQueryCap);

} // namespace seclab
