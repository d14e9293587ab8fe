#pragma once

#include <stdexcept>
#include <string>

namespace hajos {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two polynomials over distinct alphabets were combined.
struct AlphabetMismatchError : Error {
    using Error::Error;
};

/// An operation contract was violated by the caller (bad chain, n = 0,
/// division by the null polynomial, unmet hypothesis, ...).
struct PreconditionError : Error {
    using Error::Error;
};

/// An enumeration bound or search budget was exceeded.
struct ResourceLimitError : Error {
    using Error::Error;
};

/// Malformed textual input.
struct ParseError : Error {
    using Error::Error;
};

/// A polynomial that should have been a characteristic polynomial has a
/// negative coefficient; `offending` is the first such word.
struct NotALanguageError : Error {
    std::string offending;
    NotALanguageError(const std::string& msg, std::string word)
        : Error(msg), offending(std::move(word)) {}
};

/// A coefficient >= 2 appeared where a characteristic polynomial was required.
struct MultiplicityError : Error {
    std::string offending;
    MultiplicityError(const std::string& msg, std::string word)
        : Error(msg), offending(std::move(word)) {}
};

/// A construction that established theory guarantees could not be completed.
/// This is never swallowed: it is either a bug or a publishable counterexample.
/// `bundle` carries a JSON reproduction bundle.
struct TheoremViolation : Error {
    std::string bundle;
    TheoremViolation(const std::string& msg, std::string bundle_json)
        : Error(msg), bundle(std::move(bundle_json)) {}
};

}  // namespace hajos
