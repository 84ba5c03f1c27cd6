#ifndef SDW_ERRORS_HPP
#define SDW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdw {

// Bad user input (config file, CLI flags, inconsistent run parameters).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its stated domain (e.g. t < birth time,
// query past the classical life span, x outside a fan).
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A structural invariant of the evolving wave fan was violated. Always a bug,
// never a data problem.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

} // namespace sdw

#endif
