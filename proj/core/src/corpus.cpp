#include "seclab/corpus.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "seclab/oracle.hpp"

namespace seclab::corpus {

namespace {

void require_k(const std::string& id, SecurityParameter k, int min_k) {
    if (k.value < min_k || k.value > 10)
        throw Error(id + " needs " + std::to_string(min_k) + " <= k <= 10");
}

} // namespace

// ---------------------------------------------------------------------------
// Fixed public permutations (Fisher-Yates over a pinned splitmix stream).
// ---------------------------------------------------------------------------

const std::vector<uint32_t>& permutation_table(int width) {
    static std::mutex mu;
    static std::map<int, std::vector<uint32_t>> cache;
    if (width < 1 || width > 12) throw Error("permutation width out of range");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(width);
    if (it != cache.end()) return it->second;

    const uint32_t n = 1u << width;
    std::vector<uint32_t> perm(n);
    for (uint32_t i = 0; i < n; ++i) perm[i] = i;
    uint64_t seed = 0x5EC7AB1EULL ^ static_cast<uint64_t>(width);
    uint64_t counter = 0;
    for (uint32_t i = n - 1; i > 0; --i) {
        uint64_t j = stream_word(seed, counter++) % (i + 1);
        std::swap(perm[i], perm[j]);
    }
    return cache.emplace(width, std::move(perm)).first->second;
}

const std::vector<uint32_t>& permutation_table_inverse(int width) {
    static std::mutex mu;
    static std::map<int, std::vector<uint32_t>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(width);
    if (it != cache.end()) return it->second;

    const auto& perm = permutation_table(width);
    std::vector<uint32_t> inv(perm.size());
    for (uint32_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
    return cache.emplace(width, std::move(inv)).first->second;
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

std::vector<std::string> scheme_ids() {
    return {"identity", "ideal_table", "cca1_key_leak", "leaky_lsb", "xor_malleable"};
}
std::vector<std::string> ind_adversary_ids() {
    return {"replay", "coinflip", "bitflip", "cca1_table"};
}
std::vector<std::string> css_adversary_ids() { return {"lsb_extractor", "constant"}; }
std::vector<std::string> sampler_ids() { return {"uniform", "adversarial"}; }

std::string resolve_alias(const std::string& id) {
    static const std::map<std::string, std::string> aliases = {
        {"identity_scheme", "identity"},           {"ideal_table_scheme", "ideal_table"},
        {"cca1_key_leak_scheme", "cca1_key_leak"}, {"leaky_lsb_scheme", "leaky_lsb"},
        {"xor_malleable_scheme", "xor_malleable"}, {"replay_distinguisher", "replay"},
        {"coinflip_adversary", "coinflip"},        {"bitflip_cca2_adversary", "bitflip"},
        {"cca1_table_adversary", "cca1_table"},    {"constant_css_adversary", "constant"},
        {"uniform_sampler", "uniform"},            {"adversarial_sampler", "adversarial"},
    };
    auto it = aliases.find(id);
    return it == aliases.end() ? id : it->second;
}

namespace {
bool contains(const std::vector<std::string>& ids, const std::string& id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}
} // namespace

bool is_scheme(const std::string& id) { return contains(scheme_ids(), resolve_alias(id)); }
bool is_ind_adversary(const std::string& id) {
    return contains(ind_adversary_ids(), resolve_alias(id));
}
bool is_css_adversary(const std::string& id) {
    return contains(css_adversary_ids(), resolve_alias(id));
}
bool is_sampler(const std::string& id) { return contains(sampler_ids(), resolve_alias(id)); }

// ---------------------------------------------------------------------------
// Schemes
//
// The keyed toys carry their key material in both halves of the key
// pair: encryption runs from pk per the scheme contract, and the corpus
// adversaries treat pk as opaque bytes. None of them is public-key in
// any real sense; each exists to exhibit one definitional failure.
// ---------------------------------------------------------------------------

namespace {

// E(x) = x. The canonical IND-CPA failure: the challenge is the message.
Scheme make_identity(int k) {
    Scheme s;
    s.id = "identity";
    s.message_bits = k;
    s.ciphertext_bits = k;
    s.keygen = [](CoinTape&) { return KeyPair{BitString{}, BitString{}}; };
    s.encrypt = [](const BitString&, const Message& x, CoinTape&) { return x; };
    s.decrypt = [k](const BitString&, const Ciphertext& y) -> DecryptResult {
        if (y.size() != k) return std::nullopt;
        return y;
    };
    return s;
}

// y = P(x ^ a) || t with secret (a, t). The ciphertext marginal is
// independent of the plaintext, and any query with a wrong tag or wrong
// width decrypts to bottom, so mauled challenges reveal nothing.
Scheme make_ideal_table(int k) {
    Scheme s;
    s.id = "ideal_table";
    s.message_bits = k;
    s.ciphertext_bits = k + 2;
    s.keygen_coins = k + 2;
    s.keygen = [k](CoinTape& tape) {
        BitString key = BitString::from_uint(tape.draw_bits(k + 2), k + 2);
        return KeyPair{key, key};
    };
    s.encrypt = [k](const BitString& key, const Message& x, CoinTape&) {
        uint64_t a = key.slice(0, k).to_uint();
        uint64_t t = key.slice(k, 2).to_uint();
        uint64_t h = permutation_table(k)[x.to_uint() ^ a];
        return BitString::from_uint(h, k) + BitString::from_uint(t, 2);
    };
    s.decrypt = [k](const BitString& key, const Ciphertext& y) -> DecryptResult {
        if (y.size() != k + 2) return std::nullopt;
        uint64_t a = key.slice(0, k).to_uint();
        uint64_t t = key.slice(k, 2).to_uint();
        if (y.slice(k, 2).to_uint() != t) return std::nullopt;
        uint64_t x = permutation_table_inverse(k)[y.slice(0, k).to_uint()] ^ a;
        return BitString::from_uint(x, k);
    };
    return s;
}

// E(x) = x ^ r with a fixed secret pad. One phase-1 decryption of the
// all-zero ciphertext returns the pad itself.
Scheme make_cca1_key_leak(int k) {
    Scheme s;
    s.id = "cca1_key_leak";
    s.message_bits = k;
    s.ciphertext_bits = k;
    s.keygen_coins = k;
    s.keygen = [k](CoinTape& tape) {
        BitString pad = BitString::from_uint(tape.draw_bits(k), k);
        return KeyPair{pad, pad};
    };
    s.encrypt = [](const BitString& pad, const Message& x, CoinTape&) { return x ^ pad; };
    s.decrypt = [k](const BitString& pad, const Ciphertext& y) -> DecryptResult {
        if (y.size() != k) return std::nullopt;
        return y ^ pad;
    };
    return s;
}

// The low bit travels in the clear; the high bits go through the keyed
// permutation. Exactly one bit of partial information leaks.
Scheme make_leaky_lsb(int k) {
    Scheme s;
    s.id = "leaky_lsb";
    s.message_bits = k;
    s.ciphertext_bits = k;
    s.keygen_coins = k - 1;
    s.keygen = [k](CoinTape& tape) {
        BitString key = BitString::from_uint(tape.draw_bits(k - 1), k - 1);
        return KeyPair{key, key};
    };
    s.encrypt = [k](const BitString& key, const Message& x, CoinTape&) {
        uint64_t high = x.slice(1, k - 1).to_uint();
        uint64_t enc_high = permutation_table(k - 1)[high ^ key.to_uint()];
        return x.slice(0, 1) + BitString::from_uint(enc_high, k - 1);
    };
    s.decrypt = [k](const BitString& key, const Ciphertext& y) -> DecryptResult {
        if (y.size() != k) return std::nullopt;
        uint64_t high = permutation_table_inverse(k - 1)[y.slice(1, k - 1).to_uint()] ^ key.to_uint();
        return y.slice(0, 1) + BitString::from_uint(high, k - 1);
    };
    return s;
}

// y = r || (P(r ^ k1) ^ k2 ^ x). Flipping a bit in the masked half
// flips the same plaintext bit, so a phase-2 oracle one bit away from
// the challenge decrypts to the challenge plaintext one bit away.
Scheme make_xor_malleable(int k) {
    Scheme s;
    s.id = "xor_malleable";
    s.message_bits = k;
    s.ciphertext_bits = 2 * k;
    s.keygen_coins = 2 * k;
    s.encrypt_coins = k;
    s.keygen = [k](CoinTape& tape) {
        BitString key = BitString::from_uint(tape.draw_bits(2 * k), 2 * k);
        return KeyPair{key, key};
    };
    auto pad = [k](const BitString& key, uint64_t r) {
        uint64_t k1 = key.slice(0, k).to_uint();
        uint64_t k2 = key.slice(k, k).to_uint();
        return permutation_table(k)[r ^ k1] ^ k2;
    };
    s.encrypt = [k, pad](const BitString& key, const Message& x, CoinTape& tape) {
        uint64_t r = tape.draw_bits(k);
        BitString masked = BitString::from_uint(pad(key, r), k) ^ x;
        return BitString::from_uint(r, k) + masked;
    };
    s.decrypt = [k, pad](const BitString& key, const Ciphertext& y) -> DecryptResult {
        if (y.size() != 2 * k) return std::nullopt;
        uint64_t r = y.slice(0, k).to_uint();
        return y.slice(k, k) ^ BitString::from_uint(pad(key, r), k);
    };
    return s;
}

} // namespace

Scheme build_scheme(const std::string& raw_id, SecurityParameter k) {
    const std::string id = resolve_alias(raw_id);
    if (id == "identity") {
        require_k(id, k, 1);
        return make_identity(k.value);
    }
    if (id == "ideal_table") {
        require_k(id, k, 1);
        return make_ideal_table(k.value);
    }
    if (id == "cca1_key_leak") {
        require_k(id, k, 1);
        return make_cca1_key_leak(k.value);
    }
    if (id == "leaky_lsb") {
        require_k(id, k, 2);
        return make_leaky_lsb(k.value);
    }
    if (id == "xor_malleable") {
        require_k(id, k, 2);
        return make_xor_malleable(k.value);
    }
    throw UnknownCorpusId("unknown scheme \"" + raw_id + "\"");
}

// ---------------------------------------------------------------------------
// Adversaries
// ---------------------------------------------------------------------------

namespace {

// Compares the challenge against its own candidate messages; wins
// whenever ciphertexts replay plaintexts (deterministic identity-like
// schemes), guesses otherwise.
IndAdversary make_replay(int k) {
    IndAdversary a;
    a.id = "replay";
    a.phase2_coins = 1;
    a.phase1 = [k](const BitString&, OracleHandle&, CoinTape&) {
        return IndPhase1Result{BitString::zeros(k), BitString::ones(k), StateInfo{}};
    };
    a.phase2 = [](const Message& x0, const Message& x1, const StateInfo&, const Ciphertext& y,
                  OracleHandle&, CoinTape& tape) {
        if (y == x1) return 1;
        if (y == x0) return 0;
        return tape.draw_bit();
    };
    return a;
}

// Ignores everything; the advantage-zero baseline.
IndAdversary make_coinflip(int k) {
    IndAdversary a;
    a.id = "coinflip";
    a.phase2_coins = 1;
    a.phase1 = [k](const BitString&, OracleHandle&, CoinTape&) {
        return IndPhase1Result{BitString::zeros(k), BitString::ones(k), StateInfo{}};
    };
    a.phase2 = [](const Message&, const Message&, const StateInfo&, const Ciphertext&,
                  OracleHandle&, CoinTape& tape) { return tape.draw_bit(); };
    return a;
}

// Queries the challenge with its last bit flipped. Under CCA2 the query
// is legal (it differs from the challenge) and on a malleable scheme
// the answer is the challenge plaintext with one bit flipped.
IndAdversary make_bitflip(int k) {
    IndAdversary a;
    a.id = "bitflip";
    a.phase2_coins = 1;
    a.phase1 = [k](const BitString&, OracleHandle&, CoinTape&) {
        return IndPhase1Result{BitString::zeros(k), BitString::from_uint(0b11, k), StateInfo{}};
    };
    a.phase2 = [k](const Message& x0, const Message& x1, const StateInfo&, const Ciphertext& y,
                   OracleHandle& oracle, CoinTape& tape) {
        OracleReply reply = oracle.query(y.flipped(y.size() - 1));
        if (!is_refusal(reply)) {
            const auto& dr = std::get<DecryptResult>(reply);
            if (!is_bottom(dr)) {
                if (*dr == x1.flipped(k - 1)) return 1;
                if (*dr == x0.flipped(k - 1)) return 0;
            }
        }
        return tape.draw_bit();
    };
    return a;
}

// Decrypts the all-zero ciphertext in phase 1. On a pad scheme the
// answer is the pad, and phase 2 strips it from the challenge.
IndAdversary make_cca1_table(int k) {
    IndAdversary a;
    a.id = "cca1_table";
    a.phase2_coins = 1;
    a.phase1 = [k](const BitString&, OracleHandle& oracle, CoinTape&) {
        OracleReply reply = oracle.query(BitString::zeros(k));
        StateInfo state;
        if (!is_refusal(reply)) {
            const auto& dr = std::get<DecryptResult>(reply);
            if (!is_bottom(dr)) state = StateInfo{dr->raw()};
        }
        return IndPhase1Result{BitString::zeros(k), BitString::ones(k), std::move(state)};
    };
    a.phase2 = [](const Message& x0, const Message& x1, const StateInfo& state,
                  const Ciphertext& y, OracleHandle&, CoinTape& tape) {
        if (!state.bytes.empty() && static_cast<int>(state.bytes.size()) == y.size()) {
            BitString pad{state.bytes};
            BitString guess = y ^ pad;
            if (guess == x1) return 1;
            if (guess == x0) return 0;
        }
        return tape.draw_bit();
    };
    return a;
}

PartialInfoFunction lsb_function(int k) {
    return PartialInfoFunction::from_evaluator(
        "lsb", [k](const Message& x) { return x.size() == k; },
        [](const Message& x) { return BitString::from_uint(x.bit(0), 1); });
}

PartialInfoFunction const_zero_function(int k) {
    return PartialInfoFunction::from_evaluator(
        "const_zero", [k](const Message& x) { return x.size() == k; },
        [](const Message&) { return BitString::from_uint(0, 1); });
}

// Claims the clear bit of the ciphertext as the plaintext's low bit.
CssAdversary make_lsb_extractor(int k) {
    CssAdversary a;
    a.id = "lsb_extractor";
    a.space_bits = k <= 8 ? k : 8;
    a.phase1 = [k](const BitString&, OracleHandle&, CoinTape&) {
        return CssPhase1Result{MessageSpace::full(k), StateInfo{}};
    };
    a.phase2 = [k](const MessageSpace&, const StateInfo&, const Ciphertext& y, OracleHandle&,
                   CoinTape&) {
        return PartialInfoClaim{BitString::from_uint(y.bit(0), 1), lsb_function(k)};
    };
    return a;
}

// Claims the constant function's value; right about every message, so
// both experiment arms score 1 and the advantage cancels to zero. Needs
// no ciphertext, which makes it the split-experiment witness.
CssAdversary make_constant(int k) {
    CssAdversary a;
    a.id = "constant";
    a.space_bits = k <= 8 ? k : 8;
    a.phase1 = [k](const BitString&, OracleHandle&, CoinTape&) {
        return CssPhase1Result{MessageSpace::full(k), StateInfo{}};
    };
    a.phase2 = [k](const MessageSpace&, const StateInfo&, const Ciphertext&, OracleHandle&,
                   CoinTape&) {
        return PartialInfoClaim{BitString::from_uint(0, 1), const_zero_function(k)};
    };
    a.supports_no_ciphertext = true;
    a.phase2_no_ciphertext = [k](const MessageSpace&, const StateInfo&, OracleHandle&, CoinTape&) {
        return PartialInfoClaim{BitString::from_uint(0, 1), const_zero_function(k)};
    };
    return a;
}

} // namespace

IndAdversary build_ind_adversary(const std::string& raw_id, SecurityParameter k) {
    const std::string id = resolve_alias(raw_id);
    if (id == "replay") {
        require_k(id, k, 1);
        return make_replay(k.value);
    }
    if (id == "coinflip") {
        require_k(id, k, 1);
        return make_coinflip(k.value);
    }
    if (id == "bitflip") {
        require_k(id, k, 2);
        return make_bitflip(k.value);
    }
    if (id == "cca1_table") {
        require_k(id, k, 1);
        return make_cca1_table(k.value);
    }
    throw UnknownCorpusId("unknown IND adversary \"" + raw_id + "\"");
}

CssAdversary build_css_adversary(const std::string& raw_id, SecurityParameter k) {
    const std::string id = resolve_alias(raw_id);
    if (id == "lsb_extractor") {
        require_k(id, k, 1);
        return make_lsb_extractor(k.value);
    }
    if (id == "constant") {
        require_k(id, k, 1);
        return make_constant(k.value);
    }
    throw UnknownCorpusId("unknown CSS adversary \"" + raw_id + "\"");
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

SampleAlgorithm build_sampler(const std::string& raw_id) {
    const std::string id = resolve_alias(raw_id);
    if (id == "uniform") {
        SampleAlgorithm s;
        s.id = "uniform";
        s.coin_bits = [](int space_bits) { return space_bits; };
        s.sample = [](const MessageSpace& space, const StateInfo&, CoinTape& tape) {
            return uniform_sample(space, tape);
        };
        return s;
    }
    if (id == "adversarial") {
        // Always the first element: shows the advantage depends on the
        // choice of baseline.
        SampleAlgorithm s;
        s.id = "adversarial";
        s.coin_bits = [](int) { return 0; };
        s.sample = [](const MessageSpace& space, const StateInfo&, CoinTape&) {
            return space.at(0);
        };
        return s;
    }
    throw UnknownCorpusId("unknown sampler \"" + raw_id + "\"");
}

std::vector<PartialInfoFunction> partial_info_functions(SecurityParameter k) {
    return {lsb_function(k.value), const_zero_function(k.value)};
}

GameSpec make_spec(const std::string& scheme_id, const std::string& adversary_id, AttackModel atk,
                   SecurityParameter k, const std::string& sampler_id) {
    Scheme scheme = build_scheme(scheme_id, k);
    if (is_ind_adversary(adversary_id))
        return GameSpec{std::move(scheme), build_ind_adversary(adversary_id, k), atk, std::nullopt,
                        k};
    if (is_css_adversary(adversary_id))
        return GameSpec{std::move(scheme), build_css_adversary(adversary_id, k), atk,
                        build_sampler(sampler_id), k};
    throw UnknownCorpusId("unknown adversary \"" + adversary_id + "\"");
}

} // namespace seclab::corpus
