#include "seclab/model.hpp"

#include <map>
#include <mutex>

namespace seclab {

MessageSpace MessageSpace::full(int k) {
    static std::mutex mu;
    static std::map<int, MessageSpace> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;

    int n_bits = k <= 8 ? k : 8;
    std::vector<Message> elems;
    elems.reserve(1u << n_bits);
    for (uint64_t v = 0; v < (1ULL << n_bits); ++v) elems.push_back(BitString::from_uint(v, k));
    return cache.emplace(k, MessageSpace(std::move(elems))).first->second;
}

PartialInfoFunction PartialInfoFunction::from_evaluator(
    std::string description, std::function<bool(const Message&)> in_domain,
    std::function<Value(const Message&)> evaluate) {
    PartialInfoFunction f;
    f.description = std::move(description);
    f.in_domain = std::move(in_domain);
    f.evaluate = evaluate;
    f.verify = [evaluate](const Message& x, const Value& v) { return v == evaluate(x); };
    return f;
}

bool verify_partial_info(const PartialInfoFunction& f, const Message& x, const Value& v) {
    if (!f.in_domain(x)) throw DomainError("message outside function domain");
    if (v.size() > kMaxValueBits) throw InvalidAdversaryOutput("claim value over length cap");
    return f.verify(x, v);
}

Message uniform_sample(const MessageSpace& space, CoinTape& tape) {
    return space.draw(tape, bits_for_count(space.size()));
}

CorrectnessReport scheme_correctness_check(const Scheme& scheme, SecurityParameter k,
                                           int coin_tape_bits) {
    if (scheme.encrypt_coins > coin_tape_bits)
        throw Error("coin tape narrower than the scheme's encryption budget");
    if (scheme.message_bits > 12) throw Error("message space too large to enumerate");
    (void)k;

    std::vector<uint64_t> keygen_tapes;
    if (scheme.keygen_coins <= 12) {
        for (uint64_t kg = 0; kg < (1ULL << scheme.keygen_coins); ++kg) keygen_tapes.push_back(kg);
    } else {
        for (uint64_t i = 0; i < 16; ++i)
            keygen_tapes.push_back(mix64(0xC0FFEEULL + i) & ((1ULL << scheme.keygen_coins) - 1));
    }

    CorrectnessReport report;
    const uint64_t n_messages = 1ULL << scheme.message_bits;
    const uint64_t n_coins = 1ULL << coin_tape_bits;
    report.pairs_tested = n_messages * n_coins;

    for (uint64_t kg : keygen_tapes) {
        CoinTape kg_tape = CoinTape::from_value(kg, scheme.keygen_coins);
        KeyPair keys = scheme.keygen(kg_tape);
        for (uint64_t m = 0; m < n_messages; ++m) {
            Message x = BitString::from_uint(m, scheme.message_bits);
            for (uint64_t c = 0; c < n_coins; ++c) {
                CoinTape enc_tape = CoinTape::from_value(c, coin_tape_bits);
                Ciphertext y = scheme.encrypt(keys.pk, x, enc_tape);
                DecryptResult back = scheme.decrypt(keys.sk, y);
                if (is_bottom(back) || *back != x)
                    report.failures.push_back({kg, x, c, back});
            }
        }
    }
    return report;
}

} // namespace seclab
