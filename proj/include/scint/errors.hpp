#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace scint {

// ---------------------------------------------------------------------------
// Error taxonomy.
//
// Everything the library throws derives from Error, and each class maps to a
// fixed process exit code so the CLI can translate failures mechanically:
//   ConfigError / UsageError        -> 2  (bad input, bad flags, bad file)
//   DomainError / DegeneracyError /
//   OverflowError                   -> 3  (the numerics left their domain)
//   OracleResolutionError           -> 4  (reference solution not trustworthy)
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const noexcept { return 1; }
};

/// Invalid parameter values or malformed configuration input.
class ConfigError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// API misuse: out-of-range indices, too-short ladders, unknown names.
class UsageError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// Base for failures where the computation leaves its numeric domain.
/// Carries the step index once a stepping driver has attached it.
class NumericError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }

    std::optional<std::int64_t> step;

    std::string describe() const {
        std::string s = what();
        if (step) s += " (at step " + std::to_string(*step) + ")";
        return s;
    }
};

/// Negative discriminant in a quadratic position update.
class DomainError : public NumericError {
public:
    DomainError(const std::string& msg, double discriminant)
        : NumericError(msg), discriminant(discriminant) {}
    double discriminant;
};

/// A sensitivity factor or quadratic coefficient collapsed to zero or
/// crossed zero, so the update map is no longer invertible.
class DegeneracyError : public NumericError {
public:
    using NumericError::NumericError;
};

/// A state component became NaN or infinite.
class OverflowError : public NumericError {
public:
    using NumericError::NumericError;
};

/// The pathwise reference solution is too coarse for the errors being
/// measured (its self-consistency gap is not small enough).
class OracleResolutionError : public Error {
public:
    OracleResolutionError(const std::string& msg, double gap)
        : Error(msg), gap(gap) {}
    int exit_code() const noexcept override { return 4; }
    double gap;
};

}  // namespace scint
