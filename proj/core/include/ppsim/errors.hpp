#pragma once

#include <stdexcept>
#include <string>

namespace ppsim {

/// Base class for all domain errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Window erosion exhausted the rectangle, or an operation was handed a
/// window with zero or negative extent.
class DegenerateWindow : public Error {
public:
    using Error::Error;
};

class EmptyPattern : public Error {
public:
    using Error::Error;
};

/// Count-distribution truncation left more tail mass than the tolerance.
class TailTooHeavy : public Error {
public:
    using Error::Error;
};

/// DPP parameters violate the spectral existence bound.
class ExistenceViolated : public Error {
public:
    using Error::Error;
};

/// An acceptance-rejection sampler hit its attempt budget.
class AttemptsExhausted : public Error {
public:
    using Error::Error;
};

/// A conditional DPP count exceeds the number of nonzero eigenvalues.
class InfeasibleCount : public Error {
public:
    using Error::Error;
};

class MismatchedGrids : public Error {
public:
    using Error::Error;
};

class TooFewCurves : public Error {
public:
    using Error::Error;
};

/// Covariance factorization failed even after jitter escalation.
class CovarianceNotPD : public Error {
public:
    using Error::Error;
};

class NoInteriorPoints : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace ppsim
