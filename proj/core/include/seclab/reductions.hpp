#pragma once

#include <optional>
#include <string>
#include <variant>

#include "seclab/model.hpp"
#include "seclab/rational.hpp"
#include "seclab/stats.hpp"

namespace seclab {

/// What the reverse construction does when the claimed value matches
/// both candidate messages. LastIfWins follows the construction's
/// sequential comparisons literally (the later match sets d = 1);
/// CoinFlip resolves the tie with a fair coin, which is what the
/// advantage algebra assumes. Default CoinFlip.
enum class TieBreakMode { LastIfWins, CoinFlip };

inline const char* to_string(TieBreakMode m) {
    return m == TieBreakMode::LastIfWins ? "last_if" : "coinflip";
}

/// f : {x0, x1} -> {0, 1} with f(x0) = 0, f(x1) = 1. The function the
/// forward construction claims to predict.
PartialInfoFunction two_point_function(const Message& x0, const Message& x1);

/// CSS adversary built from an IND distinguisher: phase 1 wraps the
/// distinguisher's pair into an ordered two-element space, phase 2
/// forwards the oracle and claims the two-point function value the
/// distinguisher's guess names. Rejects distinguishers that emit
/// x0 = x1 (the two-point function would be ill-defined).
CssAdversary css_from_ind(const IndAdversary& inner);

/// IND distinguisher built from a CSS adversary: phase 1 draws the
/// candidate pair as two independent uniform picks from the adversary's
/// space (the space rides to phase 2 inside the state blob), phase 2
/// scores the claim against both candidates through the verifier.
IndAdversary ind_from_css(const CssAdversary& inner, TieBreakMode mode);

/// The exact factor relating the two sides of each direction.
///
/// Forward: the unified experiment re-draws the encrypted message
/// uniformly from the constructed two-point space and baselines against
/// an independent uniform sample (which is correct with probability
/// exactly 1/2), so the constructed CSS advantage is exactly half the
/// distinguisher's IND advantage. Reverse: the identity is one-to-one.
enum class ReductionDirection { CssFromInd, IndFromCss };

inline const char* to_string(ReductionDirection d) {
    return d == ReductionDirection::CssFromInd ? "css_from_ind" : "ind_from_css";
}

Rational identity_scale(ReductionDirection direction);

/// One side of an identity check: where the advantage came from and its
/// value, exact or estimated.
struct AdvantageSide {
    std::string scheme_id;
    AttackModel atk;
    std::variant<ExactAdvantage, AdvantageEstimate> value;

    bool is_exact() const { return std::holds_alternative<ExactAdvantage>(value); }
    const ExactAdvantage& exact() const { return std::get<ExactAdvantage>(value); }
    const AdvantageEstimate& estimate() const { return std::get<AdvantageEstimate>(value); }
};

struct ResidualReport {
    bool exact = false;
    // exact inputs
    Rational expected;          // scale * original advantage
    Rational residual;          // constructed - expected
    // estimated inputs
    double expected_mid = 0;
    double residual_mid = 0;
    double tolerance = 0;       // sum of the two intervals' half-widths
    bool pass = false;
};

/// Residual between a constructed adversary's advantage and the scaled
/// original. Exact inputs must match to residual zero; estimates must
/// land within the combined interval half-widths. Throws
/// IncomparableConfigurations on scheme/attack mismatch or mixed kinds.
ResidualReport check_reduction_identity(const AdvantageSide& original,
                                        const AdvantageSide& constructed,
                                        Rational original_scale = Rational::integer(1));

} // namespace seclab
