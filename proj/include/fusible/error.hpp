#pragma once

#include <stdexcept>
#include <string>

namespace fusible {

// Base class for all domain errors thrown by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input (rational, expression, or ordinal grammar).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

// A rational whose denominator is not a power of two where one is required.
struct NotDyadic : Error {
    explicit NotDyadic(const std::string& what) : Error("not dyadic: " + what) {}
};

// Argument outside the positive domain of a log-type operation.
struct NonPositive : Error {
    explicit NonPositive(const std::string& what) : Error("non-positive: " + what) {}
};

// fuse(a, b) requested with |a - b| >= 1.  `path` locates the offending
// node when the fuse came from evaluating an expression tree ("" = direct call,
// "root", "root.L.R", ... otherwise).
struct InvalidFuse : Error {
    std::string path;
    InvalidFuse(const std::string& what, std::string path_ = "")
        : Error("invalid fuse: " + what + (path_.empty() ? "" : " at " + path_)),
          path(std::move(path_)) {}
};

enum class BudgetKind { Stack, Iterations, Memo, Enumeration };

// A configured resource budget was exhausted before the result was reached.
struct BudgetExceeded : Error {
    BudgetKind kind;
    explicit BudgetExceeded(BudgetKind k) : Error(describe(k)), kind(k) {}
    static std::string describe(BudgetKind k) {
        switch (k) {
            case BudgetKind::Stack: return "budget exceeded: stack frames";
            case BudgetKind::Iterations: return "budget exceeded: loop iterations";
            case BudgetKind::Memo: return "budget exceeded: memo entries";
            case BudgetKind::Enumeration: return "budget exceeded: enumeration cap";
        }
        return "budget exceeded";
    }
};

// Value not present in the enumerated levels at the bound they were built to.
struct NotPresent : Error {
    explicit NotPresent(const std::string& what) : Error("not present in levels: " + what) {}
};

// Level-based successor requested without a certified depth guarantee.
struct Unverifiable : Error {
    explicit Unverifiable(const std::string& what) : Error("unverifiable: " + what) {}
};

// The enumerated levels are too shallow to decide the query.
struct InsufficientDepth : Error {
    explicit InsufficientDepth(const std::string& what) : Error("insufficient depth: " + what) {}
};

// A gap value that provably should be a power of two is not one.  This is a
// hard error: it falsifies an established identity rather than a conjecture.
struct NotPowerOfTwo : Error {
    explicit NotPowerOfTwo(const std::string& what) : Error("not a power of two: " + what) {}
};

// Fundamental-sequence operation applied to a non-limit ordinal.
struct NotALimit : Error {
    explicit NotALimit(const std::string& what) : Error("not a limit ordinal: " + what) {}
};

// Ordinal left-subtraction gamma + delta = beta requested with gamma > beta.
struct SubtrahendTooLarge : Error {
    explicit SubtrahendTooLarge(const std::string& what) : Error("subtrahend too large: " + what) {}
};

// Ordinal-to-number / number-to-ordinal mapping applied outside its domain.
struct NotFusible : Error {
    explicit NotFusible(const std::string& what) : Error("not fusible: " + what) {}
};
struct OutOfRange : Error {
    explicit OutOfRange(const std::string& what) : Error("out of range: " + what) {}
};

// Ordinal text that parses but is not in canonical form (exponents must
// strictly decrease).
struct NonCanonical : Error {
    explicit NonCanonical(const std::string& what) : Error("non-canonical ordinal: " + what) {}
};

// No single shift k aligns the two fundamental-sequence conventions.
struct NoUniformOffset : Error {
    explicit NoUniformOffset(const std::string& what) : Error("no uniform offset: " + what) {}
};

// A cache-file entry disagrees with a fresh recomputation.
struct CacheMismatch : Error {
    explicit CacheMismatch(const std::string& what) : Error("cache mismatch: " + what) {}
};

}  // namespace fusible
