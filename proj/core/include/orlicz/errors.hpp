#ifndef ORLICZ_ERRORS_HPP
#define ORLICZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orlicz {

// Base class for every failure the library can raise on valid-looking input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shape validation of a Young function failed (not convex / not increasing / phi(0) != 0).
class NonConvexInput : public Error {
public:
    using Error::Error;
};

// A bracketing search ran past the representable range (limit 1e300).
class OverflowRange : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Rejection sampler acceptance fell below 1e-6.
class RejectionStalled : public Error {
public:
    using Error::Error;
};

// eps / eta^{-1}(eps) failed its monotonicity probe; the modulus is not usable.
class NonConcaveModulus : public Error {
public:
    using Error::Error;
};

// Doubling failed to bracket a root within the iteration budget.
class BracketFailure : public Error {
public:
    using Error::Error;
};

// Dyadic tail test certified neither convergence nor divergence in budget.
class SlowConvergence : public Error {
public:
    using Error::Error;
};

// A level constant is infinite; the extremal density is undefined.
class InfiniteLevel : public Error {
public:
    using Error::Error;
};

class OutOfBall : public Error {
public:
    using Error::Error;
};

// The radial integral diverges for every probed scale.
class DivergentTerm1 : public Error {
public:
    using Error::Error;
};

class ExponentOutOfRange : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace orlicz

#endif
