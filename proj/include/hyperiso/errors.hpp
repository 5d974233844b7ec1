#pragma once

#include <stdexcept>
#include <string>

namespace hyperiso {

// Argument outside the domain of a function (radius not in [0,1), a >= b, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// lambda nodes decrease somewhere, i.e. the density is not phi-convex.
class MonotonicityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Requested volume/level lies beyond what the configured radius cap can reach.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VolumeMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A theorem's hypothesis does not hold for the instance at hand; distinct
// from a failed inequality.
class HypothesisViolated : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularInterior : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hyperiso
