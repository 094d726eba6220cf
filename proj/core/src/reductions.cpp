#include "seclab/reductions.hpp"

#include <cmath>

#include "seclab/oracle.hpp"

namespace seclab {

PartialInfoFunction two_point_function(const Message& x0, const Message& x1) {
    if (x0 == x1) throw Error("two-point function needs distinct messages");
    if (x0.size() != x1.size()) throw Error("two-point function needs equal lengths");
    PartialInfoFunction f;
    f.description = "two_point(" + x0.to_string() + "," + x1.to_string() + ")";
    f.in_domain = [x0, x1](const Message& x) { return x == x0 || x == x1; };
    f.evaluate = [x0, x1](const Message& x) {
        if (x == x0) return BitString::from_uint(0, 1);
        if (x == x1) return BitString::from_uint(1, 1);
        throw DomainError("message outside function domain");
    };
    f.verify = [x0, x1](const Message& x, const Value& v) {
        if (v.size() != 1) return false;
        uint8_t truth = (x == x1) ? 1 : 0;
        return v.bit(0) == truth;
    };
    return f;
}

CssAdversary css_from_ind(const IndAdversary& inner) {
    CssAdversary out;
    out.id = "css_from_ind(" + inner.id + ")";
    out.phase1_coins = inner.phase1_coins;
    out.phase2_coins = inner.phase2_coins;
    out.space_bits = 1;
    out.supports_no_ciphertext = false;

    out.phase1 = [inner](const BitString& pk, OracleHandle& oracle, CoinTape& tape) {
        IndPhase1Result p1 = inner.phase1(pk, oracle, tape);
        if (p1.x0 == p1.x1)
            throw InvalidAdversaryOutput("distinguisher emitted identical messages");
        MessageSpace space({p1.x0, p1.x1}); // ordered: index 0 -> x0, index 1 -> x1
        return CssPhase1Result{std::move(space), std::move(p1.state)};
    };
    out.phase2 = [inner](const MessageSpace& space, const StateInfo& state, const Ciphertext& y,
                         OracleHandle& oracle, CoinTape& tape) {
        const Message& x0 = space.at(0);
        const Message& x1 = space.at(1);
        int d = inner.phase2(x0, x1, state, y, oracle, tape);
        return PartialInfoClaim{BitString::from_uint(static_cast<uint64_t>(d & 1), 1),
                                two_point_function(x0, x1)};
    };
    return out;
}

namespace {

// State layout for ind_from_css: the adversary contract only carries
// (x0, x1, s) across the phase boundary, so the space is packed into s.
std::vector<uint8_t> pack_space_and_state(const MessageSpace& space, const StateInfo& inner) {
    std::vector<uint8_t> out;
    auto push_u16 = [&out](uint16_t v) {
        out.push_back(static_cast<uint8_t>(v & 0xff));
        out.push_back(static_cast<uint8_t>(v >> 8));
    };
    push_u16(static_cast<uint16_t>(space.size()));
    push_u16(static_cast<uint16_t>(space.bit_length()));
    for (const auto& m : space.elements())
        for (int i = 0; i < m.size(); ++i) out.push_back(m.bit(i));
    push_u16(static_cast<uint16_t>(inner.bytes.size()));
    out.insert(out.end(), inner.bytes.begin(), inner.bytes.end());
    return out;
}

std::pair<MessageSpace, StateInfo> unpack_space_and_state(const StateInfo& packed) {
    const auto& b = packed.bytes;
    size_t pos = 0;
    auto read_u16 = [&b, &pos]() {
        if (pos + 2 > b.size()) throw Error("truncated packed state");
        uint16_t v = static_cast<uint16_t>(b[pos] | (b[pos + 1] << 8));
        pos += 2;
        return v;
    };
    uint16_t count = read_u16();
    uint16_t bits = read_u16();
    std::vector<Message> elems;
    elems.reserve(count);
    for (uint16_t i = 0; i < count; ++i) {
        std::vector<uint8_t> mb(b.begin() + static_cast<long>(pos),
                                b.begin() + static_cast<long>(pos + bits));
        pos += bits;
        elems.emplace_back(std::move(mb));
    }
    uint16_t inner_len = read_u16();
    StateInfo inner(std::vector<uint8_t>(b.begin() + static_cast<long>(pos),
                                         b.begin() + static_cast<long>(pos + inner_len)));
    return {MessageSpace(std::move(elems)), std::move(inner)};
}

} // namespace

IndAdversary ind_from_css(const CssAdversary& inner, TieBreakMode mode) {
    IndAdversary out;
    out.id = "ind_from_css(" + inner.id + "," + to_string(mode) + ")";
    out.phase1_coins = inner.phase1_coins + 2 * inner.space_bits;
    out.phase2_coins = inner.phase2_coins + 1; // tie-break coin

    int space_bits = inner.space_bits;
    out.phase1 = [inner, space_bits](const BitString& pk, OracleHandle& oracle, CoinTape& tape) {
        CoinTape inner_tape = tape.segment(inner.phase1_coins);
        CssPhase1Result p1 = inner.phase1(pk, oracle, inner_tape);
        if (p1.space.size() < 2)
            throw InvalidAdversaryOutput("message space too small for a candidate pair");
        // Two independent uniform picks; a collision leaves the
        // challenge uninformative for that trial, which the advantage
        // algebra accounts for.
        Message x0 = p1.space.draw(tape, space_bits);
        Message x1 = p1.space.draw(tape, space_bits);
        StateInfo packed{pack_space_and_state(p1.space, p1.state)};
        return IndPhase1Result{std::move(x0), std::move(x1), std::move(packed)};
    };
    out.phase2 = [inner, mode](const Message& x0, const Message& x1, const StateInfo& packed,
                               const Ciphertext& y, OracleHandle& oracle, CoinTape& tape) {
        auto [space, state] = unpack_space_and_state(packed);
        CoinTape inner_tape = tape.segment(inner.phase2_coins);
        PartialInfoClaim claim = inner.phase2(space, state, y, oracle, inner_tape);
        bool match0 = verify_partial_info(claim.function, x0, claim.value);
        bool match1 = verify_partial_info(claim.function, x1, claim.value);
        if (match1 && !match0) return 1;
        if (match0 && !match1) return 0;
        if (match0 && match1 && mode == TieBreakMode::LastIfWins) return 1;
        return tape.draw_bit();
    };
    return out;
}

Rational identity_scale(ReductionDirection direction) {
    return direction == ReductionDirection::CssFromInd ? Rational(1, 2) : Rational::integer(1);
}

ResidualReport check_reduction_identity(const AdvantageSide& original,
                                        const AdvantageSide& constructed,
                                        Rational original_scale) {
    if (original.scheme_id != constructed.scheme_id)
        throw IncomparableConfigurations("advantages measured on different schemes");
    if (original.atk != constructed.atk)
        throw IncomparableConfigurations("advantages measured under different attack models");
    if (original.is_exact() != constructed.is_exact())
        throw IncomparableConfigurations("cannot mix exact and estimated advantages");

    ResidualReport report;
    if (original.is_exact()) {
        report.exact = true;
        report.expected = original_scale * original.exact().advantage;
        report.residual = constructed.exact().advantage - report.expected;
        report.pass = report.residual.is_zero();
    } else {
        const auto& orig = original.estimate();
        const auto& cons = constructed.estimate();
        double scale = original_scale.to_double();
        report.expected_mid = scale * orig.adv_hat;
        report.residual_mid = cons.adv_hat - report.expected_mid;
        report.tolerance = 2.0 * orig.epsilon * std::fabs(scale) + 2.0 * cons.epsilon;
        report.pass = std::fabs(report.residual_mid) <= report.tolerance;
    }
    return report;
}

} // namespace seclab
