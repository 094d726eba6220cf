#pragma once

#include <stdexcept>
#include <string>

namespace seclab {

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An adversary phase returned output violating its contract
/// (unequal-length message pair, malformed message space, ...).
class InvalidAdversaryOutput : public Error {
    using Error::Error;
};

/// Exact enumeration requested for a configuration whose total coin
/// budget exceeds the enumeration cap.
class EnumerationInfeasible : public Error {
    using Error::Error;
};

/// Split experiment requested for an adversary that cannot run its
/// second phase without a ciphertext.
class UnsupportedSplitExperiment : public Error {
    using Error::Error;
};

/// Reduction identity check across mismatched scheme/attack configurations.
class IncomparableConfigurations : public Error {
    using Error::Error;
};

/// Partial-information function applied outside its declared domain.
class DomainError : public Error {
    using Error::Error;
};

/// A component drew more coins than its declared budget.
class TapeExhausted : public Error {
    using Error::Error;
};

/// An adversary exceeded the per-phase decryption query cap.
class QueryCapExceeded : public Error {
    using Error::Error;
};

/// Registry lookup with an id that is not registered.
class UnknownCorpusId : public Error {
    using Error::Error;
};

/// Bad run configuration (CLI or matrix file).
class ConfigError : public Error {
    using Error::Error;
};

} // namespace seclab
