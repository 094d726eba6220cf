#pragma once

#include <string>
#include <vector>

#include "seclab/games.hpp"
#include "seclab/model.hpp"

namespace seclab::corpus {

// Small, fully enumerable schemes and adversaries. Each entry makes one
// definitional clause observable:
//
//   identity        deterministic, plaintext in the clear  -> replay breaks IND-CPA
//   ideal_table     keyed injection, ciphertext independent of plaintext,
//                   tag bits reject mauled ciphertexts     -> exact advantage 0 everywhere
//   cca1_key_leak   one phase-1 decryption reveals the pad -> cca1_table breaks IND-CCA1 only
//   leaky_lsb       plaintext LSB carried in the clear     -> lsb_extractor wins CSS by 1/2
//   xor_malleable   bit-flipping the masked half flips the
//                   plaintext bit                          -> bitflip breaks IND-CCA2 only
//
// The security parameter k is the message bit-length; every coin budget
// stays <= 16 bits for k <= 8 so whole experiments enumerate.

std::vector<std::string> scheme_ids();
std::vector<std::string> ind_adversary_ids();
std::vector<std::string> css_adversary_ids();
std::vector<std::string> sampler_ids();

/// Long-form aliases ("identity_scheme", "replay_distinguisher", ...)
/// resolve to the canonical short ids used by the CLI.
std::string resolve_alias(const std::string& id);

bool is_scheme(const std::string& id);
bool is_ind_adversary(const std::string& id);
bool is_css_adversary(const std::string& id);
bool is_sampler(const std::string& id);

Scheme build_scheme(const std::string& id, SecurityParameter k);
IndAdversary build_ind_adversary(const std::string& id, SecurityParameter k);
CssAdversary build_css_adversary(const std::string& id, SecurityParameter k);
SampleAlgorithm build_sampler(const std::string& id);

/// Registered partial-information functions at parameter k (for the
/// registry listing and the verifier contract tests).
std::vector<PartialInfoFunction> partial_info_functions(SecurityParameter k);

/// Fixed public permutation table for a bit width (deterministically
/// generated, identical across runs and platforms).
const std::vector<uint32_t>& permutation_table(int width);
const std::vector<uint32_t>& permutation_table_inverse(int width);

/// Convenience: assemble a GameSpec from registry ids.
GameSpec make_spec(const std::string& scheme_id, const std::string& adversary_id,
                   AttackModel atk, SecurityParameter k,
                   const std::string& sampler_id = "uniform");

} // namespace seclab::corpus
