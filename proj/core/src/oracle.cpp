#include "seclab/oracle.hpp"

namespace seclab {

std::vector<uint8_t> OracleTranscript::serialize() const {
    std::vector<uint8_t> out;
    auto push_u16 = [&out](uint16_t v) {
        out.push_back(static_cast<uint8_t>(v & 0xff));
        out.push_back(static_cast<uint8_t>(v >> 8));
    };
    push_u16(static_cast<uint16_t>(entries.size()));
    for (const auto& e : entries) {
        out.push_back(e.phase == OraclePhase::Phase1 ? 1 : 2);
        push_u16(static_cast<uint16_t>(e.query.size()));
        for (int i = 0; i < e.query.size(); ++i) out.push_back(e.query.bit(i));
        if (is_refusal(e.outcome)) {
            out.push_back(0xf0 + static_cast<uint8_t>(std::get<Refusal>(e.outcome).kind));
        } else {
            const auto& dr = std::get<DecryptResult>(e.outcome);
            if (is_bottom(dr)) {
                out.push_back(0x01);
            } else {
                out.push_back(0x02);
                push_u16(static_cast<uint16_t>(dr->size()));
                for (int i = 0; i < dr->size(); ++i) out.push_back(dr->bit(i));
            }
        }
    }
    return out;
}

OracleHandle::OracleHandle(const Scheme& scheme, BitString sk, AttackModel atk, int query_cap)
    : scheme_(&scheme), sk_(std::move(sk)), atk_(atk), query_cap_(query_cap) {}

void OracleHandle::advance_to_phase2(const std::optional<Ciphertext>& challenge) {
    if (phase_ == OraclePhase::Phase2) throw Error("already in phase 2");
    phase_ = OraclePhase::Phase2;
    phase_queries_ = 0;
    if (atk_ == AttackModel::Cca2) banned_ = challenge;
}

bool OracleHandle::oracle_live() const {
    switch (atk_) {
        case AttackModel::Cpa: return false;
        case AttackModel::Cca1: return phase_ == OraclePhase::Phase1;
        case AttackModel::Cca2: return true;
    }
    return false;
}

OracleReply OracleHandle::query(const Ciphertext& y) {
    if (phase_queries_ >= query_cap_) throw QueryCapExceeded("per-phase decryption query cap hit");
    ++phase_queries_;

    OracleReply reply = Refusal{RefusalKind::NullOracle};
    if (oracle_live()) {
        if (banned_.has_value() && y == *banned_) {
            reply = Refusal{RefusalKind::ChallengeBanned};
        } else {
            reply = scheme_->decrypt(sk_, y);
        }
    }
    transcript_.entries.push_back({phase_, y, reply});
    return reply;
}

OraclePolicy OracleHandle::policy() const {
    return OraclePolicy{atk_, phase_, banned_, query_cap_};
}

OracleHandle open_oracle(const Scheme& scheme, const BitString& sk, AttackModel atk,
                         int query_cap) {
    return OracleHandle(scheme, sk, atk, query_cap);
}

} // namespace seclab
