// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace reflectprob {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two points share (nearly) the same abscissa; no slope/intercept form exists.
class VerticalLineError : public Error {
public:
    using Error::Error;
};

/// A perpendicular slope -1/m is requested for m = 0 (or a vertical base line).
class DegenerateSlopeError : public Error {
public:
    using Error::Error;
};

/// An argument violates a documented precondition (range, positivity, ...).
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

/// Two lines are parallel; the requested intersection does not exist.
class ParallelLinesError : public Error {
public:
    using Error::Error;
};

/// Adaptive integration could not reach the requested tolerance, or a
/// probability came out of [0,1] by more than numerical noise allows.
class QuadratureFailureError : public Error {
public:
    using Error::Error;
};

/// No global rotation produced a usable transmitter-receiver slope.
class DegenerateConfigError : public Error {
public:
    using Error::Error;
};

} // namespace reflectprob
