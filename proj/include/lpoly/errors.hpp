#pragma once

#include <stdexcept>
#include <string>

namespace lpoly {

/* Bad user input: malformed polynomial, non-prime p, d >= p, ... */
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* A computation could not be completed: enumeration ceiling, precision
 * budget, certificate failure, engine disagreement. */
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* Broken arithmetic invariant. Never expected on valid input. */
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace lpoly
