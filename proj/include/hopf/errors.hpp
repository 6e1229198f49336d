#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace hopf {

/// Shortest round-trip text of x, for messages.
inline std::string num(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// Base class of every error raised by the verification engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input (bad parameters, malformed files, invalid configuration).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// s lies on (or within the guard distance of) a locus where a θ-circle collapses.
class SingularLocus : public Error {
public:
    using Error::Error;
};

/// Profile evaluated outside the interval it is defined on.
class OutOfInterval : public Error {
public:
    using Error::Error;
};

/// Operation needs a_i = |k_i| for every i.
class NotMorphismRegime : public Error {
public:
    using Error::Error;
};

/// Adaptive refinement exhausted its evaluation budget.
class ToleranceNotMet : public Error {
public:
    using Error::Error;
};

/// The step-size controller shrank below the representable minimum.
class StepUnderflow : public Error {
public:
    using Error::Error;
};

/// sin(alpha) too close to zero to divide by it.
class PoleValue : public Error {
public:
    using Error::Error;
};

/// No point of the requested branch maps to the requested sphere point.
class NoPreimage : public Error {
public:
    using Error::Error;
};

/// Profile data that violates the strict monotonicity invariant.
class NonMonotoneProfile : public Error {
public:
    using Error::Error;
};

}  // namespace hopf
