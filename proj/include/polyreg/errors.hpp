#pragma once

#include <stdexcept>
#include <string>

namespace polyreg {

/// Input outside an operation's mathematical domain (precondition failure).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Overflow of checked arithmetic or an exceeded memory/time budget.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical guarantee the code relies on did not hold. Always a bug
/// somewhere (ours or upstream), never a user error.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const char* msg)
{
    if (!cond) throw DomainError(msg);
}

inline void ensure(bool cond, const std::string& msg)
{
    if (!cond) throw InvariantViolation(msg);
}

} // namespace polyreg
