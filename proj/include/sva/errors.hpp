#ifndef SVA_ERRORS_HPP
#define SVA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sva {

// Invalid input data: reducible polynomial, unordered triple, non-unimodular
// matrix, bad configuration.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// API misuse: mismatched minimal polynomials, out-of-range root index.
class UsageError : public std::logic_error {
public:
    explicit UsageError(const std::string& msg) : std::logic_error(msg) {}
};

// Mathematically undefined request (inversion of zero).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A floating-point comparison could not be decided at the working precision.
class PrecisionExhausted : public std::runtime_error {
public:
    explicit PrecisionExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace sva

#endif
