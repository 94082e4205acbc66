#pragma once

#include <stdexcept>
#include <string>

namespace grpd {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: a type invariant or precondition is violated.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A configured size cap was hit. Constructions never silently truncate;
/// they raise this with provenance instead.
class BudgetError : public Error {
public:
    BudgetError(const std::string& where, const std::string& what)
        : Error(where + ": budget exceeded: " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

/// An exhaustive enumeration refused to run because the instance exceeds
/// its size guard (distinct from BudgetError: nothing was attempted).
class SizeGuardError : public Error {
public:
    explicit SizeGuardError(const std::string& what) : Error(what) {}
};

}  // namespace grpd
